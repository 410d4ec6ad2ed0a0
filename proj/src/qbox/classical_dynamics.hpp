#pragma once

#include <cstddef>
#include <vector>

namespace qbox {

enum class EventKind { WallLeft, Contact, WallRight };

// Two hard points on a segment, ordered 0 <= x1 <= x2 <= box_l. Dynamics are
// free flight punctuated by elastic wall bounces and pair collisions.
struct ClassicalState {
  double x1 = 0.0;
  double x2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double m1 = 1.0;
  double m2 = 1.0;
  double box_l = 1.0;
  double t = 0.0;

  double energy() const;
  void validate() const;
};

struct TrajectoryEvent {
  EventKind kind = EventKind::Contact;
  double t = 0.0;
  // state right after the event
  double x1 = 0.0, x2 = 0.0, v1 = 0.0, v2 = 0.0;
};

struct Trajectory {
  ClassicalState final_state;
  std::size_t event_count = 0;
  double energy_drift = 0.0;  // |E_end - E_start| / E_start
  std::vector<TrajectoryEvent> events;  // filled only when recording
};

// Runs exactly n_events events. Throws Stall when both particles are at rest
// or a corner cascade of simultaneous events fails to resolve.
Trajectory evolve_events(ClassicalState start, std::size_t n_events, bool record = true);

// Runs every event up to t_end, then coasts to t_end exactly.
Trajectory evolve_time(ClassicalState start, double t_end, bool record = true);

}  // namespace qbox

#include "qbox/classical_dynamics.hpp"

#include <cmath>
#include <limits>

#include "qbox/error.hpp"

namespace qbox {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
// A corner hit (both particles meeting a wall together) resolves through a
// finite burst of simultaneous events; the count grows like pi/atan(sqrt(m1/m2))
// so this cap covers mass ratios down to about 1e-7.
constexpr int corner_cap = 1024;

struct NextEvent {
  EventKind kind;
  double dt;
};

NextEvent next_event(const ClassicalState& s) {
  // clamped at zero: a last-ulp overshoot past a boundary reads as an
  // immediate event instead of negative time
  const double dt_contact =
      s.v1 - s.v2 > 0.0 ? std::max(0.0, (s.x2 - s.x1) / (s.v1 - s.v2)) : inf;
  const double dt_left = s.v1 < 0.0 ? std::max(0.0, s.x1 / -s.v1) : inf;
  const double dt_right = s.v2 > 0.0 ? std::max(0.0, (s.box_l - s.x2) / s.v2) : inf;
  // contact wins ties so corner sequences stay deterministic
  if (dt_contact <= dt_left && dt_contact <= dt_right) return {EventKind::Contact, dt_contact};
  if (dt_left <= dt_right) return {EventKind::WallLeft, dt_left};
  return {EventKind::WallRight, dt_right};
}

void advance(ClassicalState& s, const NextEvent& e) {
  s.x1 += s.v1 * e.dt;
  s.x2 += s.v2 * e.dt;
  s.t += e.dt;
  switch (e.kind) {
    case EventKind::Contact: {
      // pin both particles to one point so the contact geometry stays exact
      const double xc = 0.5 * (s.x1 + s.x2);
      s.x1 = xc;
      s.x2 = xc;
      const double total = s.m1 + s.m2;
      const double v1 = s.v1, v2 = s.v2;
      s.v1 = ((s.m1 - s.m2) * v1 + 2.0 * s.m2 * v2) / total;
      s.v2 = ((s.m2 - s.m1) * v2 + 2.0 * s.m1 * v1) / total;
      break;
    }
    case EventKind::WallLeft:
      s.x1 = 0.0;
      s.v1 = -s.v1;
      break;
    case EventKind::WallRight:
      s.x2 = s.box_l;
      s.v2 = -s.v2;
      break;
  }
}

}  // namespace

double ClassicalState::energy() const {
  return 0.5 * (m1 * v1 * v1 + m2 * v2 * v2);
}

void ClassicalState::validate() const {
  if (!(m1 > 0.0) || !(m2 > 0.0))
    fail(ErrorCode::InvalidArgument, "masses must be positive");
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
  if (!(0.0 <= x1 && x1 <= x2 && x2 <= box_l))
    fail(ErrorCode::InvalidArgument, "positions must satisfy 0 <= x1 <= x2 <= box_l");
  if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(t))
    fail(ErrorCode::InvalidArgument, "velocities and time must be finite");
}

Trajectory evolve_events(ClassicalState start, std::size_t n_events, bool record) {
  start.validate();
  const double e0 = start.energy();
  Trajectory out;
  if (record) out.events.reserve(n_events);
  int zero_run = 0;
  for (std::size_t i = 0; i < n_events; ++i) {
    const auto ev = next_event(start);
    if (!(ev.dt < inf))
      fail(ErrorCode::Stall, "no further events: both particles are at rest");
    if (ev.dt == 0.0) {
      if (++zero_run > corner_cap)
        fail(ErrorCode::Stall, "corner cascade of simultaneous events did not resolve");
    } else {
      zero_run = 0;
    }
    advance(start, ev);
    ++out.event_count;
    if (record)
      out.events.push_back({ev.kind, start.t, start.x1, start.x2, start.v1, start.v2});
  }
  out.final_state = start;
  out.energy_drift = e0 > 0.0 ? std::abs(start.energy() - e0) / e0 : 0.0;
  return out;
}

Trajectory evolve_time(ClassicalState start, double t_end, bool record) {
  start.validate();
  if (!(t_end >= start.t))
    fail(ErrorCode::InvalidArgument, "t_end must not precede the state time");
  const double e0 = start.energy();
  Trajectory out;
  int zero_run = 0;
  while (true) {
    const auto ev = next_event(start);
    if (!(ev.dt < inf) || start.t + ev.dt > t_end) break;
    if (ev.dt == 0.0) {
      if (++zero_run > corner_cap)
        fail(ErrorCode::Stall, "corner cascade of simultaneous events did not resolve");
    } else {
      zero_run = 0;
    }
    advance(start, ev);
    ++out.event_count;
    if (record)
      out.events.push_back({ev.kind, start.t, start.x1, start.x2, start.v1, start.v2});
  }
  const double coast = t_end - start.t;
  start.x1 += start.v1 * coast;
  start.x2 += start.v2 * coast;
  start.t = t_end;
  out.final_state = start;
  out.energy_drift = e0 > 0.0 ? std::abs(start.energy() - e0) / e0 : 0.0;
  return out;
}

}  // namespace qbox

#pragma once

#include <array>
#include <utility>

#include "qbox/classical_dynamics.hpp"

namespace qbox {

struct UnfoldedPoint {
  double u1 = 0.0;
  double u2 = 0.0;
};

// Reflection bookkeeping that straightens a bouncing pair trajectory: the
// wedge 0 <= x1 <= x2 <= box_l unfolds into the plane through the group
// generated by the two wall mirrors and the contact swap. The tracker holds
// the current chart u = R x + d with R a signed permutation and d a vector of
// even box-length multiples; feed it every event in order and unfold any
// state between events with the current chart.
class UnfoldTracker {
 public:
  explicit UnfoldTracker(double box_l);

  void apply_event(EventKind kind);

  UnfoldedPoint unfold(double x1, double x2) const;
  UnfoldedPoint unfold_velocity(double v1, double v2) const;

  const std::array<std::array<int, 2>, 2>& rotation() const { return r_; }
  const std::array<double, 2>& offset() const { return d_; }

 private:
  double box_l_;
  std::array<std::array<int, 2>, 2> r_;
  std::array<double, 2> d_;
};

// Inverse of any chart: wrap each coordinate into [-box_l, box_l) and sort the
// magnitudes back into wedge order.
std::pair<double, double> fold_position(UnfoldedPoint u, double box_l);

}  // namespace qbox

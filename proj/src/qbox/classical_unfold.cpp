#include "qbox/classical_unfold.hpp"

#include <cmath>

#include "qbox/error.hpp"

namespace qbox {

UnfoldTracker::UnfoldTracker(double box_l)
    : box_l_(box_l), r_{{{1, 0}, {0, 1}}}, d_{0.0, 0.0} {
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
}

void UnfoldTracker::apply_event(EventKind kind) {
  // The event mirror S fixes the event point, so composing u = R S(x) + d
  // keeps the unfolded path continuous: R' = R S, d' = R sigma + d where
  // sigma is the affine part of S.
  int s[2][2];
  double sigma2 = 0.0;
  switch (kind) {
    case EventKind::WallLeft:
      s[0][0] = -1; s[0][1] = 0; s[1][0] = 0; s[1][1] = 1;
      break;
    case EventKind::Contact:
      s[0][0] = 0; s[0][1] = 1; s[1][0] = 1; s[1][1] = 0;
      break;
    case EventKind::WallRight:
      s[0][0] = 1; s[0][1] = 0; s[1][0] = 0; s[1][1] = -1;
      sigma2 = 2.0 * box_l_;
      break;
  }
  const auto r = r_;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r_[i][j] = r[i][0] * s[0][j] + r[i][1] * s[1][j];
  d_[0] += r[0][1] * sigma2;
  d_[1] += r[1][1] * sigma2;
}

UnfoldedPoint UnfoldTracker::unfold(double x1, double x2) const {
  return {r_[0][0] * x1 + r_[0][1] * x2 + d_[0], r_[1][0] * x1 + r_[1][1] * x2 + d_[1]};
}

UnfoldedPoint UnfoldTracker::unfold_velocity(double v1, double v2) const {
  return {r_[0][0] * v1 + r_[0][1] * v2, r_[1][0] * v1 + r_[1][1] * v2};
}

std::pair<double, double> fold_position(UnfoldedPoint u, double box_l) {
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
  const double period = 2.0 * box_l;
  auto wrap = [&](double x) {
    double w = std::fmod(x + box_l, period);
    if (w < 0.0) w += period;
    return w - box_l;  // in [-box_l, box_l)
  };
  const double a = std::abs(wrap(u.u1));
  const double b = std::abs(wrap(u.u2));
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace qbox

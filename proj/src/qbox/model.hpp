#pragma once

#include <numbers>

#include "qbox/error.hpp"

namespace qbox {

// Two distinguishable hard-core particles on [0, box_l]. The mass defect
// eps = (M2 - M1) / (M1 + M2) is the perturbation strength; M0 is the harmonic
// mean of the two masses, 1/M0 = (1/M1 + 1/M2) / 2. All spectra are reported
// in units of T0 = hbar^2 pi^2 / (2 M0 box_l^2), so hbar, M0 and box_l only
// enter the dimensional threshold estimates.
struct ModelParams {
  double eps = 0.0;
  double box_l = 1.0;
  double m0 = 1.0;
  double hbar = 1.0;

  double t0() const {
    validate();
    const double pi = std::numbers::pi;
    return hbar * hbar * pi * pi / (2.0 * m0 * box_l * box_l);
  }

  double mass1() const {
    validate();
    return m0 / (1.0 + eps);
  }

  double mass2() const {
    validate();
    return m0 / (1.0 - eps);
  }

  void validate() const {
    if (!(eps >= 0.0) || !(eps < 1.0))
      fail(ErrorCode::InvalidArgument, "mass defect must satisfy 0 <= eps < 1");
    if (!(box_l > 0.0) || !(m0 > 0.0) || !(hbar > 0.0))
      fail(ErrorCode::InvalidArgument, "box_l, m0 and hbar must be positive");
  }
};

}  // namespace qbox

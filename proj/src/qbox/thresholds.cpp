#include "qbox/thresholds.hpp"

#include <cmath>
#include <numbers>

#include "qbox/error.hpp"

namespace qbox {

ThresholdReport chaos_thresholds(double nbar, double m_max_min, const ModelParams& params) {
  if (!(nbar > 0.0) || !(m_max_min > 0.0))
    fail(ErrorCode::InvalidArgument, "thresholds need nbar > 0 and m_max_min > 0");
  params.validate();
  ThresholdReport report;
  report.eps_first = m_max_min * m_max_min / (2.0 * nbar * nbar);
  report.eps_no_gaps_rough = std::pow(nbar, -2.0 / 3.0);
  report.eps_no_gaps_refined = std::pow(std::numbers::pi, 8.0 / 3.0) / 32.0 *
                               std::pow(m_max_min, 2.0 / 3.0) * std::pow(nbar, -2.0 / 3.0);
  const double ebar = params.t0() * nbar * nbar;
  report.dimensional_form =
      std::pow(params.hbar, 2.0 / 3.0) /
      (std::cbrt(params.m0) * std::cbrt(ebar) * std::pow(params.box_l, 2.0 / 3.0));
  return report;
}

double manybody_threshold(double n1d, double mass, double kb_t, double hbar) {
  if (!(n1d > 0.0) || !(mass > 0.0) || !(kb_t > 0.0) || !(hbar > 0.0))
    fail(ErrorCode::InvalidArgument, "many-body threshold needs positive inputs");
  return std::cbrt(hbar * hbar * n1d * n1d / (kb_t * mass));
}

}  // namespace qbox

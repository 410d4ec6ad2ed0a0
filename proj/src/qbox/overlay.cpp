#include "qbox/overlay.hpp"

#include <cmath>

#include "qbox/error.hpp"

namespace qbox {

std::vector<OverlaySegment> resonance_overlay(int n_max, double eps, double m_max_min) {
  if (n_max < 2) fail(ErrorCode::InvalidArgument, "overlay needs n_max >= 2");
  if (!(eps >= 0.0) || !(eps < 1.0))
    fail(ErrorCode::InvalidArgument, "mass defect must satisfy 0 <= eps < 1");
  if (!(m_max_min > 0.0)) fail(ErrorCode::InvalidArgument, "m_max_min must be > 0");

  std::vector<OverlaySegment> segments;
  if (eps == 0.0) return segments;

  // Post-selection passes once nbar >= m_max_min * s / sqrt(2 eps); the ray
  // leaves the basis square at nbar = n_max sqrt(s) / p <= sqrt(2) n_max, which
  // bounds the norms worth enumerating.
  const double root2eps = std::sqrt(2.0 * eps);
  const double nbar_corner = std::sqrt(2.0) * n_max;
  const auto norm2_bound =
      static_cast<long long>(root2eps * nbar_corner / m_max_min) + 1;

  for (Resonance res : enumerate_resonances(norm2_bound)) {
    const double s = static_cast<double>(res.norm2());
    const double root_s = std::sqrt(s);
    const double nbar_first = m_max_min * s / root2eps;
    const auto k_lo = static_cast<long long>(std::ceil(nbar_first * root_s));
    // crossing leaves the square once n2 = k p / s > n_max; keep the floor exact
    const long long k_hi = static_cast<long long>(n_max) * res.norm2() / res.p;
    for (long long k = std::max<long long>(k_lo, 1); k <= k_hi; ++k) {
      const double nbar = static_cast<double>(k) / root_s;
      const auto sel = post_select(res, nbar, eps, m_max_min);
      if (!sel.selected) continue;
      OverlaySegment seg;
      seg.res = res;
      seg.k = k;
      seg.m_max = sel.m_max;
      const double nbar1 = res.q * k / s, nbar2 = res.p * k / s;
      seg.n1_start = nbar1 - sel.m_max * res.p;
      seg.n2_start = nbar2 + sel.m_max * res.q;
      seg.n1_end = nbar1 + sel.m_max * res.p;
      seg.n2_end = nbar2 - sel.m_max * res.q;
      segments.push_back(seg);
    }
  }
  return segments;
}

}  // namespace qbox

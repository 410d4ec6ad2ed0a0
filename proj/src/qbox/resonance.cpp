#include "qbox/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

bool is_valid_resonance(Resonance r) {
  if (r.q < 0 || r.p <= r.q) return false;
  if (((r.p + r.q) & 1) == 0) return false;
  return std::gcd(r.p, r.q) == 1;
}

void require_valid_resonance(Resonance r) {
  if (!is_valid_resonance(r))
    fail(ErrorCode::InvalidArgument,
         "resonance " + std::to_string(r.p) + ":" + std::to_string(r.q) +
             " must be coprime, opposite parity, p > q >= 0");
}

std::vector<Resonance> enumerate_resonances(long long norm2_max) {
  std::vector<Resonance> out;
  for (int p = 1; static_cast<long long>(p) * p <= norm2_max; ++p)
    for (int q = 0; q < p; ++q) {
      Resonance r{p, q};
      if (r.norm2() <= norm2_max && is_valid_resonance(r)) out.push_back(r);
    }
  std::sort(out.begin(), out.end(), [](Resonance a, Resonance b) {
    if (a.norm2() != b.norm2()) return a.norm2() < b.norm2();
    return a.p < b.p;
  });
  return out;
}

double resonance_m_max(Resonance r, double nbar, double eps) {
  require_valid_resonance(r);
  if (!(nbar > 0.0) || !(eps >= 0.0))
    fail(ErrorCode::InvalidArgument, "m_max needs nbar > 0 and eps >= 0");
  return std::sqrt(2.0 * eps) * nbar / static_cast<double>(r.norm2());
}

PostSelection post_select(Resonance r, double nbar, double eps, double m_max_min) {
  if (!(m_max_min > 0.0)) fail(ErrorCode::InvalidArgument, "m_max_min must be > 0");
  PostSelection result;
  result.m_max = resonance_m_max(r, nbar, eps);
  result.selected = result.m_max >= m_max_min;
  result.approx_valid = result.m_max < nbar / std::sqrt(static_cast<double>(r.norm2()));
  return result;
}

}  // namespace qbox

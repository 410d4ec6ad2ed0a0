#include "qbox/chirikov_geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "qbox/error.hpp"

namespace qbox {

namespace {

void require_eps(double eps) {
  if (!(eps >= 0.0) || !(eps < 1.0))
    fail(ErrorCode::InvalidArgument, "mass defect must satisfy 0 <= eps < 1");
}

std::vector<double> probe_angles(int n_angles) {
  if (n_angles < 1) fail(ErrorCode::InvalidArgument, "need at least one probe angle");
  std::vector<double> theta(static_cast<std::size_t>(n_angles));
  const double step = 0.25 * std::numbers::pi / n_angles;
  for (int j = 0; j < n_angles; ++j) theta[static_cast<std::size_t>(j)] = (j + 0.5) * step;
  return theta;
}

// Marks angles covered by directions with norm2 in (norm2_lo, norm2_hi].
void cover_ring(double eps, long long norm2_lo, long long norm2_hi,
                const std::vector<double>& theta, std::vector<char>& covered) {
  for (long long p = 1; p * p <= norm2_hi; ++p)
    for (long long q = (p & 1) ? 0 : 1; q < p; q += 2) {
      const long long s = p * p + q * q;
      if (s <= norm2_lo || s > norm2_hi) continue;
      if (std::gcd(p, q) != 1) continue;
      const double direction = std::atan2(static_cast<double>(q), static_cast<double>(p));
      const double halfwidth = std::sqrt(2.0 * eps / static_cast<double>(s));
      for (std::size_t j = 0; j < theta.size(); ++j) {
        if (covered[j]) continue;
        if (std::abs(direction - theta[j]) <= halfwidth) covered[j] = 1;
      }
    }
}

double covered_fraction(const std::vector<char>& covered) {
  std::size_t n = 0;
  for (char c : covered)
    if (c) ++n;
  return static_cast<double>(n) / static_cast<double>(covered.size());
}

}  // namespace

double resonance_angular_halfwidth(double eps, long long norm2) {
  require_eps(eps);
  if (norm2 < 1) fail(ErrorCode::InvalidArgument, "direction norm must be positive");
  return std::sqrt(2.0 * eps / static_cast<double>(norm2));
}

double stripe_width(double eps) {
  require_eps(eps);
  return 2.0 * std::sqrt(2.0 * eps);
}

double quantum_direction_radius(double eps, double nbar, double m_max_min) {
  require_eps(eps);
  if (!(nbar > 0.0)) fail(ErrorCode::InvalidArgument, "nbar must be positive");
  if (!(m_max_min > 0.0)) fail(ErrorCode::InvalidArgument, "m_max_min must be > 0");
  return std::pow(2.0 * eps, 0.25) * std::sqrt(nbar / m_max_min);
}

CoverageReport coverage_scan_quantum(double eps, double nbar, double m_max_min,
                                     int n_angles) {
  const double radius = quantum_direction_radius(eps, nbar, m_max_min);
  const auto theta = probe_angles(n_angles);
  CoverageReport report;
  report.n_angles = n_angles;
  report.norm2_cap = static_cast<long long>(radius * radius);
  std::vector<char> covered(theta.size(), 0);
  cover_ring(eps, 0, report.norm2_cap, theta, covered);
  report.fraction = covered_fraction(covered);
  return report;
}

CoverageReport coverage_scan_classical(double eps, int n_angles) {
  require_eps(eps);
  const auto theta = probe_angles(n_angles);
  CoverageReport report;
  report.n_angles = n_angles;
  if (eps == 0.0) return report;
  std::vector<char> covered(theta.size(), 0);
  long long previous = 0;
  for (long long radius = 8; radius <= 4096; radius *= 2) {
    report.norm2_cap = radius * radius;
    cover_ring(eps, previous, report.norm2_cap, theta, covered);
    previous = report.norm2_cap;
    report.fraction = covered_fraction(covered);
    if (report.fraction == 1.0) break;
  }
  return report;
}

}  // namespace qbox

#include "qbox/level_statistics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

namespace {

double ks_distance(std::vector<double> samples, double (*cdf)(double)) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    worst = std::max(worst, std::abs(f - static_cast<double>(i + 1) / n));
    worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
  }
  return worst;
}

}  // namespace

double spacing_cdf_poisson(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double spacing_cdf_wigner(double s) {
  if (s <= 0.0) return 0.0;
  return 1.0 - std::exp(-0.25 * std::numbers::pi * s * s);
}

LevelStatistics level_statistics(const std::vector<double>& energies, double e_lo,
                                 double e_hi, std::size_t min_levels) {
  if (!(e_lo < e_hi)) fail(ErrorCode::InvalidArgument, "band needs e_lo < e_hi");
  if (min_levels < 4) fail(ErrorCode::InvalidArgument, "min_levels must be at least 4");
  if (!std::is_sorted(energies.begin(), energies.end()))
    fail(ErrorCode::InvalidArgument, "energies must be sorted ascending");

  const auto lo = std::lower_bound(energies.begin(), energies.end(), e_lo);
  const auto hi = std::upper_bound(lo, energies.end(), e_hi);
  const auto count = static_cast<std::size_t>(hi - lo);
  if (count < min_levels)
    fail(ErrorCode::Range, "band holds " + std::to_string(count) + " levels, need " +
                               std::to_string(min_levels));

  // Cubic least-squares staircase N(E) through (E_i, i - 1/2), with E mapped
  // onto [-1, 1] by the band itself so the normal equations stay conditioned.
  const double center = 0.5 * (e_lo + e_hi);
  const double half_width = 0.5 * (e_hi - e_lo);
  Eigen::MatrixXd vanderm(static_cast<Eigen::Index>(count), 4);
  Eigen::VectorXd staircase(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const double x = (*(lo + static_cast<std::ptrdiff_t>(i)) - center) / half_width;
    const auto row = static_cast<Eigen::Index>(i);
    vanderm(row, 0) = 1.0;
    vanderm(row, 1) = x;
    vanderm(row, 2) = x * x;
    vanderm(row, 3) = x * x * x;
    staircase(row) = static_cast<double>(i) + 0.5;
  }
  const Eigen::Vector4d coeff = vanderm.colPivHouseholderQr().solve(staircase);

  LevelStatistics out;
  out.e_lo = e_lo;
  out.e_hi = e_hi;
  out.count = count;
  out.spacings.reserve(count - 1);
  double previous = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = (*(lo + static_cast<std::ptrdiff_t>(i)) - center) / half_width;
    const double unfolded = coeff(0) + x * (coeff(1) + x * (coeff(2) + x * coeff(3)));
    if (i > 0) out.spacings.push_back(std::max(0.0, unfolded - previous));
    previous = unfolded;
  }

  double total = 0.0;
  for (double s : out.spacings) total += s;
  out.mean_unfolded_spacing = total / static_cast<double>(out.spacings.size());
  if (std::abs(out.mean_unfolded_spacing - 1.0) > 0.02)
    fail(ErrorCode::Accuracy, "unfolding failed: mean spacing " +
                                  std::to_string(out.mean_unfolded_spacing));

  out.ks_poisson = ks_distance(out.spacings, &spacing_cdf_poisson);
  out.ks_wigner = ks_distance(out.spacings, &spacing_cdf_wigner);
  return out;
}

}  // namespace qbox

#pragma once

#include <cstddef>
#include <vector>

namespace qbox {

// Nearest-neighbor spacing statistics of the levels inside [e_lo, e_hi].
// Spacings are unfolded to unit mean density with a cubic fit of the
// staircase; ks_* are Kolmogorov-Smirnov distances to the uncorrelated
// (exp(-s)) and level-repelling (Rayleigh) spacing laws.
struct LevelStatistics {
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::size_t count = 0;                 // levels inside the band
  double mean_unfolded_spacing = 0.0;    // stays within 2% of 1 by construction
  std::vector<double> spacings;          // unfolded, clamped at zero
  double ks_poisson = 0.0;
  double ks_wigner = 0.0;
};

// energies must be sorted ascending. Throws when the band holds fewer than
// min_levels levels or the unfolding fails to reach unit mean spacing.
LevelStatistics level_statistics(const std::vector<double>& energies, double e_lo,
                                 double e_hi, std::size_t min_levels = 100);

// Spacing laws as cumulative distributions, for reports and tests.
double spacing_cdf_poisson(double s);
double spacing_cdf_wigner(double s);

}  // namespace qbox

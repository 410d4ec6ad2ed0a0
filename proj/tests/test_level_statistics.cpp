#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "qbox/basis.hpp"
#include "qbox/eigensolver.hpp"
#include "qbox/error.hpp"
#include "qbox/level_statistics.hpp"

using namespace qbox;

namespace {

std::vector<double> energies_from_spacings(const std::vector<double>& spacings) {
  std::vector<double> energies;
  energies.reserve(spacings.size());
  double e = 0.0;
  for (double s : spacings) {
    e += s;
    energies.push_back(e);
  }
  return energies;
}

}  // namespace

TEST_CASE("uncorrelated levels land on the exponential law") {
  std::mt19937_64 rng(515151);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> spacings(3000);
  for (double& s : spacings) s = exp1(rng);
  const auto energies = energies_from_spacings(spacings);
  const auto stats = level_statistics(energies, 0.0, energies.back() + 1.0);
  CHECK(stats.count == energies.size());
  CHECK(std::abs(stats.mean_unfolded_spacing - 1.0) <= 0.02);
  for (double s : stats.spacings) CHECK(s >= 0.0);
  CHECK(stats.ks_poisson < 0.05);
  CHECK(stats.ks_wigner > 0.15);
}

TEST_CASE("repelling levels land on the Rayleigh law") {
  std::mt19937_64 rng(616161);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> spacings(3000);
  for (double& s : spacings)
    s = std::sqrt(-4.0 * std::log1p(-u(rng)) / std::numbers::pi);
  const auto energies = energies_from_spacings(spacings);
  const auto stats = level_statistics(energies, 0.0, energies.back() + 1.0);
  CHECK(stats.ks_wigner < 0.05);
  CHECK(stats.ks_poisson > 0.15);
}

TEST_CASE("unfolding flattens a smoothly varying density") {
  // quadratically growing levels have a 1/sqrt(E) density; away from the
  // E = 0 edge a cubic staircase fit delivers unit mean spacing
  std::vector<double> energies;
  for (int i = 1; i <= 2400; ++i) energies.push_back(1e-3 * i * i);
  const auto stats = level_statistics(energies, 1000.0, 4840.0);
  CHECK(stats.count == 1201);
  CHECK(std::abs(stats.mean_unfolded_spacing - 1.0) <= 0.02);
  CHECK(stats.spacings.size() == stats.count - 1);
}

TEST_CASE("unfolding refuses a band it cannot flatten") {
  // the same staircase taken from its singular edge bends faster than a cubic
  std::vector<double> energies;
  for (int i = 1; i <= 1200; ++i) energies.push_back(1e-3 * i * i);
  CHECK_THROWS_AS((void)level_statistics(energies, 0.0, energies.back() + 1.0), Error);
}

TEST_CASE("spacing laws cross near half a mean spacing") {
  CHECK(spacing_cdf_poisson(0.0) == 0.0);
  CHECK(spacing_cdf_wigner(0.0) == 0.0);
  CHECK(spacing_cdf_poisson(0.5) > spacing_cdf_wigner(0.5) - 1.0);  // both defined
  CHECK(spacing_cdf_poisson(10.0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(spacing_cdf_wigner(10.0) == doctest::Approx(1.0).epsilon(1e-10));
  // the exponential law piles more weight below s = 1/2
  CHECK(spacing_cdf_poisson(0.5) > spacing_cdf_wigner(0.5));
}

TEST_CASE("narrow or malformed bands are rejected") {
  std::vector<double> energies;
  for (int i = 0; i < 500; ++i) energies.push_back(static_cast<double>(i));
  CHECK_THROWS_AS((void)level_statistics(energies, 0.0, 50.0), Error);
  CHECK_THROWS_AS((void)level_statistics(energies, 10.0, 10.0), Error);
  CHECK_THROWS_AS((void)level_statistics(energies, 0.0, 499.0, 3), Error);
  std::vector<double> unsorted = {3.0, 1.0, 2.0};
  CHECK_THROWS_AS((void)level_statistics(unsorted, 0.0, 10.0, 2), Error);
}

TEST_CASE("spacing statistics flip between the two laws with the defect") {
  const Basis basis(50);
  const double e_lo = 625.0, e_hi = 1225.0;  // nbar from 25 to 35

  const auto weak = compute_spectrum(basis, 0.006);
  const auto weak_stats = level_statistics(weak.eigenvalues, e_lo, e_hi);
  CHECK(weak_stats.count >= 100);
  CHECK(weak_stats.ks_poisson < weak_stats.ks_wigner);

  const auto strong = compute_spectrum(basis, 0.10);
  const auto strong_stats = level_statistics(strong.eigenvalues, e_lo, e_hi);
  CHECK(strong_stats.ks_wigner < strong_stats.ks_poisson);
}

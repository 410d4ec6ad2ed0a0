#include <cmath>

#include "doctest.h"
#include "qbox/chirikov_geometry.hpp"
#include "qbox/error.hpp"

using namespace qbox;

TEST_CASE("stripe geometry at a two percent mass defect") {
  CHECK(resonance_angular_halfwidth(0.02, 5) ==
        doctest::Approx(0.0894427).epsilon(1e-5));
  CHECK(resonance_angular_halfwidth(0.02, 1) ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK(stripe_width(0.02) == doctest::Approx(0.4).epsilon(1e-14));
  const double r = quantum_direction_radius(0.02, 44.5, 0.5);
  CHECK(r == doctest::Approx(4.2190).epsilon(1e-4));
  CHECK(r * r == doctest::Approx(std::sqrt(0.04) * 44.5 / 0.5).epsilon(1e-12));
}

TEST_CASE("quantum coverage vanishes below the first-resonance threshold") {
  // radius squared below one admits no direction at all
  const auto report = coverage_scan_quantum(6.0e-5, 44.5, 0.5, 64);
  CHECK(report.fraction == 0.0);
  CHECK(report.norm2_cap == 0);
  CHECK(report.n_angles == 64);
}

TEST_CASE("quantum coverage grows with the mass defect") {
  double prev = -1.0;
  for (const double eps : {1e-4, 1e-3, 1e-2, 5e-2}) {
    const auto report = coverage_scan_quantum(eps, 44.5, 0.5, 64);
    CHECK(report.fraction >= prev);
    CHECK(report.fraction <= 1.0);
    prev = report.fraction;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("classical coverage saturates at moderate defect") {
  const auto report = coverage_scan_classical(0.05, 64);
  CHECK(report.fraction == 1.0);
  CHECK(report.norm2_cap <= 4096LL * 4096LL);

  const auto quantum = coverage_scan_quantum(0.05, 44.5, 0.5, 64);
  CHECK(report.fraction >= quantum.fraction);

  const auto zero = coverage_scan_classical(0.0, 64);
  CHECK(zero.fraction == 0.0);
  CHECK(zero.norm2_cap == 0);
}

TEST_CASE("coverage scans reject invalid arguments") {
  CHECK_THROWS_AS((void)resonance_angular_halfwidth(0.02, 0), Error);
  CHECK_THROWS_AS((void)quantum_direction_radius(0.02, -1.0, 0.5), Error);
  CHECK_THROWS_AS((void)quantum_direction_radius(0.02, 44.5, 0.0), Error);
  CHECK_THROWS_AS((void)coverage_scan_quantum(1.5, 44.5, 0.5, 64), Error);
  CHECK_THROWS_AS((void)coverage_scan_quantum(0.02, 44.5, 0.5, 0), Error);
  CHECK_THROWS_AS((void)coverage_scan_classical(-0.1, 64), Error);
}

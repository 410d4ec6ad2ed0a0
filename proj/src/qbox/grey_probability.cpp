#include "qbox/grey_probability.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "qbox/error.hpp"

namespace qbox {

double sawtooth(double xi) {
  double w = std::fmod(xi + 1.0, 2.0);
  if (w < 0.0) w += 2.0;
  return 1.0 - 2.0 * std::abs(w - 1.0);
}

namespace {

double grey_law(long long a, long long b, double offset, double box_l) {
  // The chequer pattern repeats under transverse displacement by 2 box_l /
  // sqrt(s): translating the line by the lattice vector (2 box_l, 0) shifts
  // it one period along the unit normal.
  const double s = static_cast<double>(a) * a + static_cast<double>(b) * b;
  return 0.5 +
         sawtooth(offset * std::sqrt(s) / box_l) /
             (2.0 * static_cast<double>(b * b - a * a));
}

}  // namespace

double prob_grey(Resonance r, double offset, double box_l) {
  require_valid_resonance(r);
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
  return grey_law(r.q, r.p, offset, box_l);
}

double prob_grey_direction(long long a, long long b, double offset, double box_l) {
  if (a < 0 || b < 0 || (a == 0 && b == 0))
    fail(ErrorCode::InvalidArgument, "direction needs a, b >= 0, not both zero");
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
  const long long g = std::gcd(a, b);
  a /= g;
  b /= g;
  if (((a + b) & 1) == 0) return 0.5;  // same-parity rational: no bias survives
  return grey_law(a, b, offset, box_l);
}

double prob_grey_mc(double dir1, double dir2, double offset, std::size_t n_samples,
                    std::uint64_t seed, double box_l) {
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
  if (n_samples == 0) fail(ErrorCode::InvalidArgument, "need at least one sample");
  if (!std::isfinite(dir1) || !std::isfinite(dir2) || dir1 < 0.0 || dir2 < 0.0 ||
      (dir1 == 0.0 && dir2 == 0.0))
    fail(ErrorCode::InvalidArgument, "direction needs finite components >= 0, not both zero");

  const bool integer_direction = dir1 == std::floor(dir1) && dir2 == std::floor(dir2) &&
                                 dir1 < 1e9 && dir2 < 1e9;
  double span;
  if (integer_direction) {
    auto a = static_cast<long long>(dir1), b = static_cast<long long>(dir2);
    const long long g = std::gcd(a, b);
    a /= g;
    b /= g;
    // one full lattice period of the folded pattern along the line
    span = 2.0 * box_l * std::sqrt(static_cast<double>(a * a + b * b));
  } else {
    span = std::ldexp(box_l, 20);
  }

  const double norm = std::hypot(dir1, dir2);
  const double e1 = dir1 / norm, e2 = dir2 / norm;
  const double period = 2.0 * box_l;
  auto wrap = [&](double x) {
    double w = std::fmod(x + box_l, period);
    if (w < 0.0) w += period;
    return w - box_l;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, span);
  std::size_t grey = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double sigma = u(rng);
    const double u1 = offset * e2 + sigma * e1;
    const double u2 = -offset * e1 + sigma * e2;
    if (std::abs(wrap(u2)) > std::abs(wrap(u1))) ++grey;
  }
  return static_cast<double>(grey) / static_cast<double>(n_samples);
}

double averaged_potential(Resonance r, double offset, double ebar, double box_l) {
  require_valid_resonance(r);
  if (!(box_l > 0.0)) fail(ErrorCode::InvalidArgument, "box length must be positive");
  const double s = static_cast<double>(r.norm2());
  return -(ebar / s) * sawtooth(offset * std::sqrt(s) / box_l);
}

}  // namespace qbox

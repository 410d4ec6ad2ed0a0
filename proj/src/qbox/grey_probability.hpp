#pragma once

#include <cstddef>
#include <cstdint>

#include "qbox/resonance.hpp"

namespace qbox {

// Period-2 sawtooth, 1 - 2|xi| on [-1, 1).
double sawtooth(double xi);

// Fraction of travel time with particle 2 the outer one, for a straight
// unfolded trajectory of direction (q, p) displaced by offset along the unit
// normal (p, -q)/sqrt(s):
//   P = 1/2 + saw(offset sqrt(s) / box_l) / (2 (p^2 - q^2))
// The transverse period 2 box_l / sqrt(s) is forced by the translation
// lattice of the chequer pattern; peaks sit on lines through lattice nodes.
double prob_grey(Resonance r, double offset, double box_l = 1.0);

// Same quantity for any integer direction (a, b) with a (resp. b) the speed of
// particle 1 (resp. 2). Opposite-parity reduced directions follow the law
// above with its sign carried by b^2 - a^2; same-parity rationals give exactly
// one half.
double prob_grey_direction(long long a, long long b, double offset, double box_l = 1.0);

// Monte Carlo estimate over a line offset * n + sigma * e, e = (dir1, dir2)
// normalized, n its left normal (dir2, -dir1) normalized. Integer directions
// sample exactly one lattice period; irrational ones sample a 2^20 box-length
// span. Deterministic for a fixed seed.
double prob_grey_mc(double dir1, double dir2, double offset, std::size_t n_samples,
                    std::uint64_t seed, double box_l = 1.0);

// Time average of the kinetic-defect coupling along the displaced resonant
// line, in the same units as ebar: -(ebar / s) saw(offset sqrt(s) / box_l).
// Equals -ebar (p^2 - q^2)/s * (2 P - 1) with P the grey probability.
double averaged_potential(Resonance r, double offset, double ebar, double box_l = 1.0);

}  // namespace qbox

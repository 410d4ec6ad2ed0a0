#pragma once

#include <cstddef>
#include <vector>

#include "qbox/resonance_line.hpp"

namespace qbox {

enum class EffectiveBasisKind { PlaneWave, Sine };

// One-degree-of-freedom reduction of a single resonance line: a rotor with
// kinetic term (p^2+q^2)(m+delta)^2 in a sawtooth well of depth
// v0 = nbar^2/(p^2+q^2) = k^2/(p^2+q^2)^2, everything in units of T0. The 1:0
// resonance keeps a hard wall in the angle variable and therefore uses a sine
// basis m >= 1; every other resonance lives on the full circle (plane waves,
// m any integer).
struct EffectiveHamiltonian {
  Resonance res;
  long long k = 0;
  double delta = 0.0;
  double kinetic_prefactor = 0.0;  // p^2 + q^2
  double v0 = 0.0;
  EffectiveBasisKind basis_kind = EffectiveBasisKind::PlaneWave;
};

EffectiveHamiltonian effective_from_line(const ResonanceLine& line);

// Fourier element <m| calV |m'> of the zero-mean sawtooth
// calV(theta) = -v0 (1 - 2|theta|/pi), units of T0. Even m - m' gives 0.
double effective_potential_element(const EffectiveHamiltonian& ham, long long m,
                                   long long mp);

// Half-width of the resonance the model describes, sqrt(2 eps v0 / s).
double effective_m_max(const EffectiveHamiltonian& ham, double eps);

// Truncation large enough for the bound states: 2 ceil(m_max) + 8.
int default_m_cut(const EffectiveHamiltonian& ham, double eps);

struct EffectiveSpectrum {
  std::vector<double> eigenvalues;  // ascending, units of T0
  std::size_t bound_count = 0;      // eigenvalues below the well rim eps * v0
  double m_max = 0.0;
};

// Diagonalizes the truncated model at defect eps. m_cut must leave margin
// beyond the resonance width (at least 2 ceil(m_max) + 4), otherwise the
// truncation error is thrown.
EffectiveSpectrum solve_effective(const EffectiveHamiltonian& ham, double eps, int m_cut);

}  // namespace qbox

#pragma once

#include <vector>

namespace qbox {

// Frequency-ratio label of a classical resonance omega2/omega1 = p/q with
// p > q >= 0, gcd(p, q) = 1 and p + q odd (opposite parity). Same-parity
// coprime directions are rational but carry no resonance.
struct Resonance {
  int p = 0;
  int q = 0;

  bool operator==(const Resonance&) const = default;
  long long norm2() const {
    return static_cast<long long>(p) * p + static_cast<long long>(q) * q;
  }
};

bool is_valid_resonance(Resonance r);
void require_valid_resonance(Resonance r);

// All valid resonances with p^2 + q^2 <= norm2_max, sorted by p^2 + q^2
// ascending, ties by p ascending.
std::vector<Resonance> enumerate_resonances(long long norm2_max);

/// Half-width of a resonance in units of the lattice step along the line:
// m_max = sqrt(2 eps) nbar / (p^2 + q^2).
double resonance_m_max(Resonance r, double nbar, double eps);

// A resonance survives quantum post-selection when it spans at least m_max_min
// lattice states on either side of the ray. approx_valid goes false once
// m_max >= nbar / sqrt(p^2+q^2), where the pendulum reduction stops making
// sense.
struct PostSelection {
  bool selected = false;
  bool approx_valid = true;
  double m_max = 0.0;
};

PostSelection post_select(Resonance r, double nbar, double eps, double m_max_min);

}  // namespace qbox

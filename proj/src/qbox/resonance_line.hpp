#pragma once

#include "qbox/basis.hpp"
#include "qbox/resonance.hpp"

namespace qbox {

// One resonance line of a p:q resonance: the lattice states with
// q n1 + p n2 = k. The line crosses the resonance ray at
// (nbar1, nbar2) = (q k, p k) / s with s = p^2 + q^2, and its states sit at
// (nbar1 + (m+delta) p, nbar2 - (m+delta) q) for integer m. delta is the
// offset of the nearest lattice point, stored as the exact rational
// delta_num / s in (-1/2, 1/2] (s is odd for every valid resonance, so the
// +1/2 tie cannot actually occur). Kept in integer arithmetic throughout so
// the energy identity E(state(m)) = ebar + s (m+delta)^2 is exact.
struct ResonanceLine {
  Resonance res;
  long long k = 0;
  long long delta_num = 0;
  long long n1_zero = 0;  // lattice point at m = 0 (not necessarily a valid state)
  long long n2_zero = 0;
  long long m_lo = 0;  // admissible window: 0 < n1 < n2 holds iff m_lo <= m <= m_hi
  long long m_hi = -1;

  long long s() const { return res.norm2(); }
  double delta() const { return static_cast<double>(delta_num) / static_cast<double>(s()); }
  double nbar1() const { return static_cast<double>(res.q * k) / static_cast<double>(s()); }
  double nbar2() const { return static_cast<double>(res.p * k) / static_cast<double>(s()); }
  double nbar() const;
  double ebar() const {  // ray energy k^2 / s in units of T0
    return static_cast<double>(k) * static_cast<double>(k) / static_cast<double>(s());
  }

  bool in_window(long long m) const { return m >= m_lo && m <= m_hi; }
  UnperturbedState state_at(long long m) const;  // throws the range error outside the window
  double energy_at(long long m) const;           // ebar + s (m + delta)^2
  // Exact-rational energy: energy_at(m) = energy_numerator(m) / s, with
  // energy_numerator(m) = k^2 + (m s + delta_num)^2 as an integer.
  long long energy_numerator(long long m) const;
  long long index_of(UnperturbedState state) const;  // inverse of state_at; throws off-line
};

// Line of the given resonance passing through a state.
ResonanceLine line_through(UnperturbedState state, Resonance res);

// Line of the given resonance with conserved combination k; the admissible
// window may be empty for small k.
ResonanceLine line_from_k(Resonance res, long long k);

}  // namespace qbox

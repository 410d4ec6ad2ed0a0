#pragma once

#include "qbox/resonance.hpp"

namespace qbox {

// Angular half-width of the chaotic stripe around a resonant direction of
// squared norm s: sqrt(2 eps / s).
double resonance_angular_halfwidth(double eps, long long norm2);

// Half-width of the resonance in action space relative to nbar: 2 sqrt(2 eps).
double stripe_width(double eps);

// Largest direction norm that still spans at least m_max_min lattice states:
// post-selection keeps s <= r^2 with r = (2 eps)^(1/4) sqrt(nbar / m_max_min).
double quantum_direction_radius(double eps, double nbar, double m_max_min);

struct CoverageReport {
  double fraction = 0.0;   // covered share of probe angles
  long long norm2_cap = 0; // largest squared direction norm admitted
  int n_angles = 0;
};

// Probes midpoint angles of (0, pi/4) (the open wedge between the particle-1
// axis and the excluded equal-speed diagonal) and marks one covered when some
// admitted resonance direction lies within its angular half-width.
// The quantum scan admits s <= quantum_direction_radius^2, so it reports zero
// below the first-resonance threshold.
CoverageReport coverage_scan_quantum(double eps, double nbar, double m_max_min,
                                     int n_angles);

// The classical scan has no quantum cutoff: it doubles the direction radius
// from 8 until every angle is covered or the radius reaches 4096.
CoverageReport coverage_scan_classical(double eps, int n_angles);

}  // namespace qbox

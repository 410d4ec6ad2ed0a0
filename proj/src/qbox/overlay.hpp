#pragma once

#include <vector>

#include "qbox/resonance.hpp"

namespace qbox {

// One plot-ready stroke of a resonance band: the piece of line k covering
// |m + delta| <= m_max around the ray crossing (nbar1, nbar2). start is the
// m = -m_max side, end the m = +m_max side, both in (n1, n2) coordinates.
struct OverlaySegment {
  Resonance res;
  long long k = 0;
  double m_max = 0.0;
  double n1_start = 0.0;
  double n2_start = 0.0;
  double n1_end = 0.0;
  double n2_end = 0.0;
};

// All post-selected resonance segments inside the basis square n1, n2 <= n_max,
// ordered by resonance (norm ascending) then k ascending. Empty at eps = 0.
// Only the p > q wedge is emitted; mirrored q:p bands are a rendering-side
// reflection across the diagonal.
std::vector<OverlaySegment> resonance_overlay(int n_max, double eps, double m_max_min);

}  // namespace qbox

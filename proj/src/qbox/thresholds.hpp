#pragma once

#include "qbox/model.hpp"

namespace qbox {

// Chaos-onset defect scales at mean radius nbar, all dimensionless:
//  eps_first        m_max_min^2 / (2 nbar^2), where the widest (1:0) resonance
//                   first passes post-selection;
//  eps_no_gaps_rough  nbar^(-2/3), the order-of-magnitude overlap estimate;
//  eps_no_gaps_refined  (pi^(8/3)/32) m_max_min^(2/3) / nbar^(2/3), the
//                   refined overlap estimate;
//  dimensional_form   hbar^(2/3) / (M0^(1/3) Ebar^(1/3) L^(2/3)) with
//                   Ebar = T0 nbar^2, the same scale written in terms of the
//                   physical parameters.
struct ThresholdReport {
  double eps_first = 0.0;
  double eps_no_gaps_rough = 0.0;
  double eps_no_gaps_refined = 0.0;
  double dimensional_form = 0.0;
};

ThresholdReport chaos_thresholds(double nbar, double m_max_min,
                                 const ModelParams& params = {});

// Defect scale for full overlap of a one-dimensional gas at temperature
// kb_t and line density n1d: (hbar^2 n1d^2 / (kb_t mass))^(1/3).
double manybody_threshold(double n1d, double mass, double kb_t, double hbar = 1.0);

}  // namespace qbox

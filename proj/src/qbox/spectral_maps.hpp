#pragma once

#include <cstddef>
#include <vector>

#include "qbox/basis.hpp"
#include "qbox/eigensolver.hpp"

namespace qbox {

// Participation number 1 / sum_i V(i, lambda)^4 per eigenstate, between 1
// (a single basis state) and the basis dimension (uniform spread). Refused at
// eps = 0 where eigenvectors are an arbitrary basis of each degenerate shell.
std::vector<double> participation_numbers(const SpectralResult& spectrum);

// Squared components of the eigenstate that an unperturbed anchor state feeds
// most strongly, resolved over the (n1, n2) grid through the basis index.
struct OverlapMap {
  std::size_t anchor_index = 0;  // basis index of the anchor
  std::size_t column = 0;        // eigenstate chosen for the map
  double max_weight = 0.0;       // largest squared component in that column
  std::vector<double> weights;   // |V(i, column)|^2 over basis indices, sums to 1
};

OverlapMap overlap_map(const SpectralResult& spectrum, const Basis& basis,
                       UnperturbedState anchor);

}  // namespace qbox

#include "qbox/spectral_maps.hpp"

#include <cmath>

#include "qbox/error.hpp"

namespace qbox {

namespace {

void require_coherent(const SpectralResult& spectrum) {
  const auto dim = static_cast<std::size_t>(spectrum.eigenvectors.rows());
  if (dim == 0 || spectrum.eigenvectors.cols() != spectrum.eigenvectors.rows() ||
      spectrum.eigenvalues.size() != dim)
    fail(ErrorCode::InvalidArgument, "spectral result is empty or inconsistent");
}

}  // namespace

std::vector<double> participation_numbers(const SpectralResult& spectrum) {
  require_coherent(spectrum);
  if (spectrum.eps == 0.0)
    fail(ErrorCode::InvalidArgument,
         "participation is undefined at eps = 0: degenerate shells make the "
         "eigenbasis arbitrary");
  const auto dim = static_cast<std::size_t>(spectrum.eigenvectors.rows());
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double sum4 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double c = spectrum.eigenvectors(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j));
      sum4 += c * c * c * c;
    }
    out[j] = 1.0 / sum4;
  }
  return out;
}

OverlapMap overlap_map(const SpectralResult& spectrum, const Basis& basis,
                       UnperturbedState anchor) {
  require_coherent(spectrum);
  if (static_cast<std::size_t>(spectrum.eigenvectors.rows()) != basis.size())
    fail(ErrorCode::InvalidArgument, "spectral result does not match the basis");
  OverlapMap map;
  map.anchor_index = basis.index_of(anchor);

  const auto dim = static_cast<Eigen::Index>(basis.size());
  const auto row = static_cast<Eigen::Index>(map.anchor_index);
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double a = std::abs(spectrum.eigenvectors(row, j));
    if (a > best_abs) {
      best_abs = a;
      best = j;
    }
  }
  map.column = static_cast<std::size_t>(best);

  map.weights.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double c = spectrum.eigenvectors(i, best);
    const double w = c * c;
    map.weights[static_cast<std::size_t>(i)] = w;
    if (w > map.max_weight) map.max_weight = w;
  }
  return map;
}

}  // namespace qbox

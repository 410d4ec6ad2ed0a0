#include "qbox/hamiltonian.hpp"

#include <thread>
#include <vector>

#include "qbox/error.hpp"
#include "qbox/matrix_elements.hpp"

namespace qbox {

Eigen::MatrixXd assemble_hamiltonian(const Basis& basis, double eps, int n_threads) {
  if (!(eps >= 0.0) || !(eps < 1.0))
    fail(ErrorCode::InvalidArgument, "mass defect must satisfy 0 <= eps < 1");
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h(dim, dim);
  const auto& states = basis.states();

  auto fill_rows = [&](Eigen::Index first, Eigen::Index stride) {
    for (Eigen::Index i = first; i < dim; i += stride) {
      h(i, i) = static_cast<double>(energy_of(states[i]));
      for (Eigen::Index j = i + 1; j < dim; ++j)
        h(i, j) = eps == 0.0 ? 0.0 : eps * matrix_element_exact(states[i], states[j]);
    }
  };

  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1 || dim < 64) {
    fill_rows(0, 1);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) workers.emplace_back(fill_rows, t, n_threads);
    for (auto& w : workers) w.join();
  }

  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j) h(j, i) = h(i, j);
  return h;
}

}  // namespace qbox

#include "qbox/eigensolver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qbox/error.hpp"
#include "qbox/hamiltonian.hpp"

#if QBOX_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace qbox {

namespace {

void require_symmetric(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    fail(ErrorCode::InvalidArgument, "eigensolver needs a nonempty square matrix");
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(ErrorCode::InvalidArgument, "eigensolver needs a symmetric matrix");
}

// Columns keep a solver-independent orientation: largest-magnitude component
// positive, earliest index winning ties.
void fix_column_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index i_peak = 0;
    double peak = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > peak) {
        peak = a;
        i_peak = i;
      }
    }
    if (v(i_peak, j) < 0.0) v.col(j) = -v.col(j);
  }
}

}  // namespace

DenseSpectrum solve_dense(Eigen::MatrixXd h) {
  require_symmetric(h);
  const Eigen::Index n = h.rows();
  DenseSpectrum out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));

#if QBOX_HAVE_LAPACKE
  // Eigen::MatrixXd is column-major, so the buffer feeds LAPACK directly;
  // dsyevd overwrites it with the eigenvectors.
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), h.data(),
                     static_cast<lapack_int>(n), out.eigenvalues.data());
  if (info != 0)
    fail(ErrorCode::Computation,
         "symmetric eigensolver failed to converge (info " + std::to_string(info) + ")");
  out.eigenvectors = std::move(h);
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::Computation, "symmetric eigensolver failed to converge");
  for (Eigen::Index i = 0; i < n; ++i) out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  out.eigenvectors = solver.eigenvectors();
#endif

  fix_column_signs(out.eigenvectors);
  return out;
}

double max_residual(const Eigen::MatrixXd& h, const DenseSpectrum& spectrum) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < spectrum.eigenvectors.cols(); ++j) {
    const double r = (h * spectrum.eigenvectors.col(j) -
                      spectrum.eigenvalues[static_cast<std::size_t>(j)] *
                          spectrum.eigenvectors.col(j))
                         .cwiseAbs()
                         .maxCoeff();
    if (r > worst) worst = r;
  }
  return worst;
}

double max_orthonormality_defect(const Eigen::MatrixXd& eigenvectors) {
  const Eigen::Index n = eigenvectors.cols();
  return (eigenvectors.transpose() * eigenvectors - Eigen::MatrixXd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

SpectralResult compute_spectrum(const Basis& basis, double eps, int n_threads) {
  auto dense = solve_dense(assemble_hamiltonian(basis, eps, n_threads));
  SpectralResult out;
  out.n_max = basis.n_max();
  out.eps = eps;
  out.eigenvalues = std::move(dense.eigenvalues);
  out.eigenvectors = std::move(dense.eigenvectors);
  return out;
}

}  // namespace qbox

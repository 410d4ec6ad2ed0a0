#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qbox/basis.hpp"

namespace qbox {

// Eigenvalues ascending; eigenvectors_col(j) belongs to eigenvalues[j], each
// column normalized and signed so its largest-magnitude component is positive.
struct DenseSpectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Full symmetric eigensolve of h. Uses the divide-and-conquer LAPACK driver
// when available, otherwise Eigen's tridiagonal QR.
DenseSpectrum solve_dense(Eigen::MatrixXd h);

// max_j || h v_j - lambda_j v_j ||_inf
double max_residual(const Eigen::MatrixXd& h, const DenseSpectrum& spectrum);

// || V^T V - I ||_max
double max_orthonormality_defect(const Eigen::MatrixXd& eigenvectors);

// Assembled-and-solved pair basis spectrum at one defect value.
struct SpectralResult {
  int n_max = 0;
  double eps = 0.0;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

SpectralResult compute_spectrum(const Basis& basis, double eps, int n_threads = 0);

}  // namespace qbox

#pragma once

#include <Eigen/Dense>

#include "qbox/basis.hpp"

namespace qbox {

// Dense symmetric Hamiltonian in the unperturbed basis, energies in units of
// T0: diagonal n1^2 + n2^2, off-diagonal eps * v(a, b). Assembly may run on
// several threads; every entry is computed and written exactly once, so the
// result is bit-identical for any worker count, and H is mirrored from the
// upper triangle so H(i,j) == H(j,i) holds bit-exactly.
Eigen::MatrixXd assemble_hamiltonian(const Basis& basis, double eps, int n_threads = 0);

}  // namespace qbox

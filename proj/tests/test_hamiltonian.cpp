#include <cstring>

#include "doctest.h"
#include "qbox/error.hpp"
#include "qbox/hamiltonian.hpp"
#include "qbox/matrix_elements.hpp"

using namespace qbox;

TEST_CASE("zero defect gives the diagonal unperturbed spectrum") {
  Basis basis(12);
  auto h = assemble_hamiltonian(basis, 0.0);
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (i == j)
        CHECK(h(i, j) == static_cast<double>(energy_of(basis.state(i))));
      else
        CHECK(h(i, j) == 0.0);
    }
}

TEST_CASE("small matrix entries") {
  Basis basis(3);  // (1,2), (1,3), (2,3)
  auto h = assemble_hamiltonian(basis, 0.02);
  REQUIRE(h.rows() == 3);
  CHECK(h(0, 0) == 5.0);
  CHECK(h(1, 1) == 10.0);
  CHECK(h(2, 2) == 13.0);
  CHECK(h(0, 1) == 0.02 * matrix_element_exact({1, 2}, {1, 3}));
  CHECK(h(0, 2) == 0.0);  // even total parity
  CHECK(h(1, 2) == 0.02 * matrix_element_exact({1, 3}, {2, 3}));
}

TEST_CASE("assembly is symmetric and thread-count invariant") {
  Basis basis(20);
  auto h1 = assemble_hamiltonian(basis, 0.05, 1);
  auto h4 = assemble_hamiltonian(basis, 0.05, 4);
  CHECK(std::memcmp(h1.data(), h4.data(), sizeof(double) * h1.size()) == 0);
  for (Eigen::Index i = 0; i < h1.rows(); ++i)
    for (Eigen::Index j = i + 1; j < h1.cols(); ++j) CHECK(h1(i, j) == h1(j, i));
}

TEST_CASE("defect outside [0,1) is rejected") {
  Basis basis(4);
  CHECK_THROWS_AS((void)assemble_hamiltonian(basis, -0.1), Error);
  CHECK_THROWS_AS((void)assemble_hamiltonian(basis, 1.0), Error);
}

#include "doctest.h"
#include "qbox/basis.hpp"
#include "qbox/error.hpp"

using namespace qbox;

TEST_CASE("basis sizes") {
  CHECK(Basis(100).size() == 4950);
  CHECK(Basis(2).size() == 1);
  CHECK(Basis(2).state(0) == UnperturbedState{1, 2});
  CHECK(Basis(4).size() == 6);
}

TEST_CASE("energy-ascending order with n1 tie-break") {
  Basis basis(30);
  const auto& states = basis.states();
  CHECK(states.front() == UnperturbedState{1, 2});
  CHECK(energy_of(states.front()) == 5);
  for (std::size_t i = 1; i < states.size(); ++i) {
    const long long ea = energy_of(states[i - 1]), eb = energy_of(states[i]);
    const bool ordered = ea < eb || (ea == eb && states[i - 1].n1 < states[i].n1);
    CHECK(ordered);
  }
  // (1,8) and (4,7) are degenerate at 65; the smaller n1 comes first.
  CHECK(basis.index_of({1, 8}) + 1 == basis.index_of({4, 7}));
}

TEST_CASE("index_of is the inverse of state lookup") {
  Basis basis(40);
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.state(i)) == i);
  CHECK(basis.contains({1, 40}));
  CHECK(!basis.contains({1, 41}));
  CHECK_THROWS_AS((void)basis.index_of({1, 41}), Error);
  CHECK_THROWS_AS((void)basis.state(basis.size()), Error);
}

TEST_CASE("nmax below 2 is rejected") {
  CHECK_THROWS_AS(Basis(1), Error);
  CHECK_THROWS_AS(Basis(-3), Error);
}

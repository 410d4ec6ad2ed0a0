#include "qbox/basis.hpp"

#include <algorithm>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

bool is_valid_state(UnperturbedState s) { return s.n1 >= 1 && s.n2 > s.n1; }

void require_valid_state(UnperturbedState s) {
  if (!is_valid_state(s))
    fail(ErrorCode::InvalidArgument, "state (" + std::to_string(s.n1) + "," +
                                         std::to_string(s.n2) +
                                         ") violates 1 <= n1 < n2");
}

namespace {

long long pack(UnperturbedState s) {
  return static_cast<long long>(s.n1) * 200000 + s.n2;
}

}  // namespace

Basis::Basis(int n_max) : n_max_(n_max) {
  if (n_max < 2) fail(ErrorCode::InvalidArgument, "basis needs n_max >= 2");
  states_.reserve(static_cast<std::size_t>(n_max) * (n_max - 1) / 2);
  for (int n1 = 1; n1 < n_max; ++n1)
    for (int n2 = n1 + 1; n2 <= n_max; ++n2) states_.push_back({n1, n2});
  std::sort(states_.begin(), states_.end(), [](UnperturbedState a, UnperturbedState b) {
    long long ea = energy_of(a), eb = energy_of(b);
    if (ea != eb) return ea < eb;
    return a.n1 < b.n1;
  });
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) index_[pack(states_[i])] = i;
}

const UnperturbedState& Basis::state(std::size_t index) const {
  if (index >= states_.size()) fail(ErrorCode::Range, "state index out of range");
  return states_[index];
}

std::size_t Basis::index_of(UnperturbedState s) const {
  auto it = index_.find(pack(s));
  if (it == index_.end())
    fail(ErrorCode::Range, "state (" + std::to_string(s.n1) + "," + std::to_string(s.n2) +
                               ") not in basis");
  return it->second;
}

bool Basis::contains(UnperturbedState s) const { return index_.count(pack(s)) != 0; }

}  // namespace qbox

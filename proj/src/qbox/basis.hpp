#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace qbox {

// Unperturbed two-particle level: mode numbers 1 <= n1 < n2, energy
// (n1^2 + n2^2) in units of T0.
struct UnperturbedState {
  int n1 = 0;
  int n2 = 0;

  bool operator==(const UnperturbedState&) const = default;
};

inline long long energy_of(UnperturbedState s) {
  return static_cast<long long>(s.n1) * s.n1 + static_cast<long long>(s.n2) * s.n2;
}

bool is_valid_state(UnperturbedState s);
void require_valid_state(UnperturbedState s);

// All states with n2 <= n_max, ordered by energy ascending with ties broken by
// n1 ascending. The ordering is total (equal energy and equal n1 forces equal
// n2), so index_of is a bijection onto [0, size).
class Basis {
public:
  explicit Basis(int n_max);

  int n_max() const { return n_max_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<UnperturbedState>& states() const { return states_; }
  const UnperturbedState& state(std::size_t index) const;
  std::size_t index_of(UnperturbedState s) const;
  bool contains(UnperturbedState s) const;

private:
  int n_max_;
  std::vector<UnperturbedState> states_;
  std::unordered_map<long long, std::size_t> index_;
};

}  // namespace qbox

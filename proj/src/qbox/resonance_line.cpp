#include "qbox/resonance_line.hpp"

#include <cmath>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

// gcd(a, b) together with x, y solving a x + b y = gcd.
void extended_gcd(long long a, long long b, long long& g, long long& x, long long& y) {
  if (b == 0) {
    g = a;
    x = 1;
    y = 0;
    return;
  }
  long long g1, x1, y1;
  extended_gcd(b, a % b, g1, x1, y1);
  g = g1;
  x = y1;
  y = x1 - (a / b) * y1;
}

ResonanceLine build_line(Resonance res, long long n1, long long n2) {
  ResonanceLine line;
  line.res = res;
  const long long p = res.p, q = res.q, s = res.norm2();
  line.k = q * n1 + p * n2;
  const long long u = p * n1 - q * n2;  // lattice-step coordinate along the line, times s
  long long r = u % s;
  if (r < 0) r += s;
  // nearest lattice point to the ray; ties (impossible for odd s) toward +1/2
  line.delta_num = 2 * r > s ? r - s : r;
  const long long m_here = (u - line.delta_num) / s;
  line.n1_zero = n1 - m_here * p;
  line.n2_zero = n2 + m_here * q;
  line.m_lo = ceil_div(1 - line.n1_zero, p);
  line.m_hi = floor_div(line.n2_zero - line.n1_zero - 1, p + q);
  return line;
}

}  // namespace

double ResonanceLine::nbar() const {
  return static_cast<double>(k) / std::sqrt(static_cast<double>(s()));
}

UnperturbedState ResonanceLine::state_at(long long m) const {
  if (!in_window(m))
    fail(ErrorCode::Range, "line index m = " + std::to_string(m) +
                               " outside the admissible window [" + std::to_string(m_lo) +
                               ", " + std::to_string(m_hi) + "]");
  return {static_cast<int>(n1_zero + m * res.p), static_cast<int>(n2_zero - m * res.q)};
}

long long ResonanceLine::energy_numerator(long long m) const {
  const long long um = m * s() + delta_num;
  return k * k + um * um;
}

double ResonanceLine::energy_at(long long m) const {
  if (!in_window(m))
    fail(ErrorCode::Range, "line index m = " + std::to_string(m) +
                               " outside the admissible window");
  return static_cast<double>(energy_numerator(m)) / static_cast<double>(s());
}

long long ResonanceLine::index_of(UnperturbedState state) const {
  require_valid_state(state);
  const long long on_line =
      static_cast<long long>(res.q) * state.n1 + static_cast<long long>(res.p) * state.n2;
  if (on_line != k)
    fail(ErrorCode::Range, "state (" + std::to_string(state.n1) + "," +
                               std::to_string(state.n2) + ") is not on line k = " +
                               std::to_string(k));
  const long long u =
      static_cast<long long>(res.p) * state.n1 - static_cast<long long>(res.q) * state.n2;
  return (u - delta_num) / s();
}

ResonanceLine line_through(UnperturbedState state, Resonance res) {
  require_valid_state(state);
  require_valid_resonance(res);
  return build_line(res, state.n1, state.n2);
}

ResonanceLine line_from_k(Resonance res, long long k) {
  require_valid_resonance(res);
  if (k < 1) fail(ErrorCode::InvalidArgument, "line label k must be >= 1");
  long long g, x, y;
  extended_gcd(res.q, res.p, g, x, y);  // g = 1 for a valid resonance
  return build_line(res, k * x, k * y);
}

}  // namespace qbox

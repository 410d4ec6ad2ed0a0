#include "qbox/matrix_elements.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <tuple>
#include <utility>

#include "qbox/error.hpp"
#include "qbox/quadrature.hpp"

namespace qbox {

namespace {

constexpr double pi = std::numbers::pi;

bool parity_even(UnperturbedState a, UnperturbedState b) {
  return ((a.n1 + a.n2 + b.n1 + b.n2) & 1) == 0;
}

// Puts the operand pair in a canonical order so both evaluation orders run the
// identical float product and the symmetry v(a,b) = v(b,a) holds bit-exactly.
void canonicalize(UnperturbedState& a, UnperturbedState& b) {
  if (std::tie(b.n1, b.n2) < std::tie(a.n1, a.n2)) std::swap(a, b);
}

}  // namespace

double matrix_element_exact(UnperturbedState a, UnperturbedState b) {
  require_valid_state(a);
  require_valid_state(b);
  if (parity_even(a, b)) return 0.0;
  canonicalize(a, b);
  const double n1 = a.n1, n2 = a.n2, m1 = b.n1, m2 = b.n2;
  const double den[8] = {n1 + m1 + n2 + m2, n1 + m1 - n2 - m2, n1 - m1 + n2 - m2,
                         n1 - m1 - n2 + m2, n1 + m1 + n2 - m2, n1 + m1 - n2 + m2,
                         n1 - m1 + n2 + m2, -n1 + m1 + n2 + m2};
  for (double d : den)
    if (d == 0.0) {
      std::fprintf(stderr,
                   "qbox: excluded degenerate element (%d,%d)|(%d,%d), zero denominator\n",
                   a.n1, a.n2, b.n1, b.n2);
      return 0.0;
    }
  double v = 256.0 / (pi * pi);
  v *= n1 * m1 * n2 * m2;
  v *= (n1 - n2) * (n1 + n2);
  v *= (m1 - m2) * (m1 + m2);
  for (double d : den) v /= d;
  return v;
}

double matrix_element_approx(UnperturbedState a, UnperturbedState b) {
  require_valid_state(a);
  require_valid_state(b);
  if (parity_even(a, b)) return 0.0;
  canonicalize(a, b);
  const double nbar1 = 0.5 * (a.n1 + b.n1);
  const double nbar2 = 0.5 * (a.n2 + b.n2);
  const double d1 = a.n1 - b.n1;
  const double d2 = a.n2 - b.n2;
  const double den = d1 * d1 - d2 * d2;
  if (den == 0.0)
    fail(ErrorCode::InvalidArgument, "degenerate denominator: dn1^2 equals dn2^2");
  return 4.0 / (pi * pi) * (nbar1 * nbar1 - nbar2 * nbar2) / den;
}

namespace {

// Integral of sin(m pi x) sin(n pi x) over [0, X] (box length scaled to 1).
double sine_pair_integral(int m, int n, double x) {
  if (m == n) return 0.5 * x - std::sin(2.0 * pi * m * x) / (4.0 * pi * m);
  const double d = pi * (m - n), s = pi * (m + n);
  return std::sin(d * x) / (2.0 * d) - std::sin(s * x) / (2.0 * s);
}

}  // namespace

double matrix_element_quadrature(UnperturbedState a, UnperturbedState b, double abs_tol) {
  require_valid_state(a);
  require_valid_state(b);
  canonicalize(a, b);
  // Applying the kinetic-defect operator to psi_a turns it into T0 (n1^2-n2^2)
  // times the symmetrized product, so the integrand is a pure sine polynomial:
  //   v = 4 (n1^2-n2^2) Int_0^1 dy [ s_{b2} s_{a2} I(b1,a1;y) + s_{b2} s_{a1} I(b1,a2;y)
  //                                 - s_{b1} s_{a2} I(b2,a1;y) - s_{b1} s_{a1} I(b2,a2;y) ]
  // with s_m = sin(m pi y) and I(m,n;y) the inner closed form above.
  const int a1 = a.n1, a2 = a.n2, b1 = b.n1, b2 = b.n2;
  const double prefactor =
      4.0 * (static_cast<double>(a1) * a1 - static_cast<double>(a2) * a2);
  auto integrand = [&](double y) {
    const double sa1 = std::sin(pi * a1 * y), sa2 = std::sin(pi * a2 * y);
    const double sb1 = std::sin(pi * b1 * y), sb2 = std::sin(pi * b2 * y);
    return sb2 * sa2 * sine_pair_integral(b1, a1, y) +
           sb2 * sa1 * sine_pair_integral(b1, a2, y) -
           sb1 * sa2 * sine_pair_integral(b2, a1, y) -
           sb1 * sa1 * sine_pair_integral(b2, a2, y);
  };
  const int panels = std::max(16, a2 + b2 + 2);
  const double scale = std::abs(prefactor) > 1.0 ? std::abs(prefactor) : 1.0;
  return prefactor * integrate_adaptive(integrand, 0.0, 1.0, abs_tol / scale, panels);
}

}  // namespace qbox

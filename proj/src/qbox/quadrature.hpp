#pragma once

#include <cmath>

#include "qbox/error.hpp"

namespace qbox {

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double m, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol) return left + right + err;
  if (depth <= 0)
    fail(ErrorCode::Accuracy, "adaptive quadrature did not reach the requested tolerance");
  return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson integration of f over [a, b] with an absolute error budget.
// The interval is pre-split into initial_panels panels so oscillatory
// integrands cannot alias through the first coarse estimate; the budget is
// divided evenly among panels and halved on every split. Throws the accuracy
// error if the budget cannot be met within the depth limit.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol,
                          int initial_panels = 16, int max_depth = 32) {
  if (!(abs_tol > 0.0)) fail(ErrorCode::InvalidArgument, "quadrature tolerance must be > 0");
  if (initial_panels < 1) initial_panels = 1;
  const double h = (b - a) / initial_panels;
  const double panel_tol = abs_tol / initial_panels;
  double total = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    const double pa = a + i * h;
    const double pb = (i + 1 == initial_panels) ? b : pa + h;
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa), fm = f(pm), fb = f(pb);
    const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson_recurse(f, pa, pm, pb, fa, fm, fb, whole, panel_tol, max_depth);
  }
  return total;
}

}  // namespace qbox

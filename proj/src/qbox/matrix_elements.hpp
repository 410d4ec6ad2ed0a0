#pragma once

#include "qbox/basis.hpp"

namespace qbox {

// Perturbation matrix elements v = <a| V |b> / T0 of the mass-defect operator
// between antisymmetrized box states. The element vanishes unless the total
// parity n1 + n2 + n1' + n2' is odd; all three routes apply that selection
// rule first and are exactly symmetric under operand exchange.

// Closed form. Denominator zeros cannot occur for odd-parity input (every
// factor is then odd); the guard exists for defense and logs a diagnostic.
double matrix_element_exact(UnperturbedState a, UnperturbedState b);

// Large-n asymptotic form v ~ (4/pi^2) (N1^2 - N2^2) / (dn1^2 - dn2^2) with
// N = (n + n')/2 and dn = n - n'. Throws the degenerate-denominator error when
// dn1^2 = dn2^2 (only possible for input already removed by the parity gate).
double matrix_element_approx(UnperturbedState a, UnperturbedState b);

// Independent numerical route: the wedge integral 0 <= x1 <= x2 <= L of
// conj(psi') V psi with V applied analytically to the sine products. The inner
// x1 integral is reduced in closed form, the outer one integrated adaptively
// to the absolute tolerance abs_tol. Used to cross-check the closed form.
double matrix_element_quadrature(UnperturbedState a, UnperturbedState b,
                                 double abs_tol = 1e-8);

}  // namespace qbox

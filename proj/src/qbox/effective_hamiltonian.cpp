#include "qbox/effective_hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbox/error.hpp"

namespace qbox {

namespace {

constexpr double four_over_pi2 = 4.0 / (std::numbers::pi * std::numbers::pi);

}  // namespace

EffectiveHamiltonian effective_from_line(const ResonanceLine& line) {
  EffectiveHamiltonian ham;
  ham.res = line.res;
  ham.k = line.k;
  ham.delta = line.delta();
  const double s = static_cast<double>(line.s());
  ham.kinetic_prefactor = s;
  ham.v0 = static_cast<double>(line.k) * static_cast<double>(line.k) / (s * s);
  ham.basis_kind =
      line.res.q == 0 ? EffectiveBasisKind::Sine : EffectiveBasisKind::PlaneWave;
  return ham;
}

double effective_potential_element(const EffectiveHamiltonian& ham, long long m,
                                   long long mp) {
  if (ham.basis_kind == EffectiveBasisKind::Sine) {
    if (m < 1 || mp < 1)
      fail(ErrorCode::Range, "sine-basis indices must satisfy m >= 1");
    if (((m - mp) & 1) == 0) return 0.0;
    const double d = static_cast<double>(m - mp), t = static_cast<double>(m + mp);
    return -four_over_pi2 * ham.v0 * (1.0 / (d * d) - 1.0 / (t * t));
  }
  if (((m - mp) & 1) == 0) return 0.0;
  const double d = static_cast<double>(m - mp);
  return -four_over_pi2 * ham.v0 / (d * d);
}

double effective_m_max(const EffectiveHamiltonian& ham, double eps) {
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidArgument, "eps must be >= 0");
  return std::sqrt(2.0 * eps * ham.v0 / ham.kinetic_prefactor);
}

int default_m_cut(const EffectiveHamiltonian& ham, double eps) {
  return 2 * static_cast<int>(std::ceil(effective_m_max(ham, eps))) + 8;
}

EffectiveSpectrum solve_effective(const EffectiveHamiltonian& ham, double eps, int m_cut) {
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidArgument, "eps must be >= 0");
  EffectiveSpectrum out;
  out.m_max = effective_m_max(ham, eps);
  if (m_cut < 2 * static_cast<int>(std::ceil(out.m_max)) + 4)
    fail(ErrorCode::Truncation,
         "m_cut leaves no margin beyond the resonance width; need at least "
         "2 ceil(m_max) + 4");

  const bool sine = ham.basis_kind == EffectiveBasisKind::Sine;
  const int dim = sine ? m_cut : 2 * m_cut + 1;
  auto index_of_m = [&](int row) { return sine ? row + 1 : row - m_cut; };

  if (eps == 0.0) {  // free rotor: the diagonal is already the spectrum, exactly
    out.eigenvalues.resize(dim);
    for (int i = 0; i < dim; ++i) {
      const double m = static_cast<double>(index_of_m(i)) + ham.delta;
      out.eigenvalues[i] = ham.kinetic_prefactor * m * m;
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    out.bound_count = 0;
    return out;
  }

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = static_cast<double>(index_of_m(i)) + ham.delta;
    h(i, i) = ham.kinetic_prefactor * m * m;
    for (int j = i + 1; j < dim; ++j) {
      const double v = eps * effective_potential_element(ham, index_of_m(i), index_of_m(j));
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::Computation, "effective-model diagonalization failed");
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + dim);
  const double rim = eps * ham.v0;
  out.bound_count = static_cast<std::size_t>(
      std::count_if(out.eigenvalues.begin(), out.eigenvalues.end(),
                    [rim](double e) { return e < rim; }));
  return out;
}

}  // namespace qbox

// Acceptance harness: one line per criterion, [PASS] or [FAIL], nonzero exit
// when anything fails. QBOX_ACCEPT_FAST=1 restricts the spectral criteria to
// the reduced basis so the gate stays quick in constrained environments.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbox/basis.hpp"
#include "qbox/chirikov_geometry.hpp"
#include "qbox/classical_dynamics.hpp"
#include "qbox/classical_unfold.hpp"
#include "qbox/effective_hamiltonian.hpp"
#include "qbox/eigensolver.hpp"
#include "qbox/error.hpp"
#include "qbox/grey_probability.hpp"
#include "qbox/hamiltonian.hpp"
#include "qbox/level_statistics.hpp"
#include "qbox/matrix_elements.hpp"
#include "qbox/overlay.hpp"
#include "qbox/resonance.hpp"
#include "qbox/resonance_line.hpp"
#include "qbox/spectral_maps.hpp"
#include "qbox/thresholds.hpp"

namespace {

int g_failures = 0;
bool g_fast = false;
std::vector<std::string> g_info;

void report(bool ok, const std::string& line) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << line << std::endl;
  if (!ok) ++g_failures;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

template <class Fn>
void criterion(const std::string& label, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(false, label + " threw: " + e.what());
  }
}

/* c1: the closed-form pair coupling against direct numerical integration of
   the contact interaction over the wedge, every pair in the n <= 12 block. */
void criterion_couplings() {
  const qbox::Basis basis(12);
  double max_diff = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const double exact = qbox::matrix_element_exact(basis.state(i), basis.state(j));
      const double integ =
          qbox::matrix_element_quadrature(basis.state(i), basis.state(j), 1e-8);
      max_diff = std::max(max_diff, std::abs(exact - integ));
      ++pairs;
    }
  }
  report(max_diff < 1e-6, "closed-form couplings match the integration oracle on all " +
                              std::to_string(pairs) +
                              " pairs of the n <= 12 block (max diff " +
                              fmt(max_diff) + ")");
}

/* c2: enumeration of coprime opposite-parity directions in ascending norm
   order, plus the worked post-selection value on the 2:1 band. */
void criterion_enumeration() {
  const std::vector<qbox::Resonance> expected = {{1, 0}, {2, 1}, {3, 2}, {4, 1},
                                                 {4, 3}, {5, 2}, {6, 1}, {5, 4}};
  const auto got = qbox::enumerate_resonances(41);
  bool ok = got.size() == expected.size();
  if (ok)
    for (std::size_t i = 0; i < got.size(); ++i)
      ok = ok && got[i].p == expected[i].p && got[i].q == expected[i].q;
  ok = ok && !qbox::is_valid_resonance({1, 1});   // same parity
  ok = ok && !qbox::is_valid_resonance({2, 2});   // not coprime
  ok = ok && !qbox::is_valid_resonance({1, 2});   // q > p
  const double m_max = qbox::resonance_m_max({2, 1}, 44.5, 0.02);
  ok = ok && std::abs(m_max - 1.78) < 1e-12;
  const auto sel = qbox::post_select({2, 1}, 44.5, 0.02, 0.5);
  ok = ok && sel.selected;
  report(ok, "direction enumeration reproduces the frozen list to norm 41 and the "
             "worked band half-width 1.78");
}

/* c3: exact integer arithmetic of resonance lines on random inputs. */
void criterion_line_arithmetic() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick_n1(1, 400), pick_gap(1, 400);
  const auto resonances = qbox::enumerate_resonances(41);
  std::uniform_int_distribution<std::size_t> pick_res(0, resonances.size() - 1);
  const std::size_t trials = 10000;
  std::size_t bad = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto res = resonances[pick_res(rng)];
    const int n1 = pick_n1(rng);
    const int n2 = n1 + pick_gap(rng);
    const qbox::UnperturbedState state{n1, n2};
    const auto line = qbox::line_through(state, res);
    const long long s = res.norm2();
    bool ok = line.k == res.q * static_cast<long long>(n1) +
                            res.p * static_cast<long long>(n2);
    // the stored offset is the exact rational delta_num / s in (-1/2, 1/2]
    ok = ok && (-s < 2 * line.delta_num) && (2 * line.delta_num <= s);
    const long long m = line.index_of(state);
    ok = ok && line.in_window(m) && line.state_at(m) == state;
    // energy identity as integers: s E(m) = k^2 + (m s + delta_num)^2
    ok = ok && line.energy_numerator(m) == s * qbox::energy_of(state);
    ok = ok && std::abs(line.energy_at(m) -
                        static_cast<double>(qbox::energy_of(state))) <
                   1e-9 * static_cast<double>(qbox::energy_of(state));
    // the same line is recovered from its conserved combination alone
    const auto from_k = qbox::line_from_k(res, line.k);
    ok = ok && from_k.delta_num == line.delta_num &&
         from_k.n1_zero == line.n1_zero && from_k.n2_zero == line.n2_zero;
    // double-precision center sits on the line: q nbar1 + p nbar2 = k
    ok = ok && std::abs(res.q * line.nbar1() + res.p * line.nbar2() -
                        static_cast<double>(line.k)) <
                   1e-9 * static_cast<double>(line.k);
    if (!ok) ++bad;
  }
  report(bad == 0, "resonance-line arithmetic holds exactly on " +
                       std::to_string(trials) + " random lines (" +
                       std::to_string(bad) + " violations)");
}

struct BandCheck {
  double ks_poisson = 0.0;
  double ks_wigner = 0.0;
};

BandCheck band_stats(int n_max, double eps, double e_lo, double e_hi) {
  const qbox::Basis basis(n_max);
  const auto spectrum = qbox::compute_spectrum(basis, eps);
  const auto stats = qbox::level_statistics(spectrum.eigenvalues, e_lo, e_hi);
  return {stats.ks_poisson, stats.ks_wigner};
}

/* c4: nearest-neighbor spacing statistics cross from the uncorrelated law to
   the level-repelling law as the defect grows, in a fixed energy band. */
void criterion_spacing_flip() {
  const auto quiet50 = band_stats(50, 0.006, 625.0, 1225.0);
  const auto loud50 = band_stats(50, 0.10, 625.0, 1225.0);
  bool ok = quiet50.ks_poisson < quiet50.ks_wigner &&
            loud50.ks_wigner < loud50.ks_poisson;
  std::string note = "reduced basis " + fmt(quiet50.ks_poisson) + "/" +
                     fmt(quiet50.ks_wigner) + " then " + fmt(loud50.ks_poisson) +
                     "/" + fmt(loud50.ks_wigner);
  if (!g_fast) {
    const auto quiet100 = band_stats(100, 0.006, 1376.41, 2704.0);
    const qbox::Basis basis(100);
    const auto loud_spectrum = qbox::compute_spectrum(basis, 0.06);
    const auto loud100 =
        qbox::level_statistics(loud_spectrum.eigenvalues, 1376.41, 2704.0);
    ok = ok && quiet100.ks_poisson < quiet100.ks_wigner &&
         loud100.ks_wigner < loud100.ks_poisson;
    note += "; full basis " + fmt(quiet100.ks_poisson) + "/" +
            fmt(quiet100.ks_wigner) + " then " + fmt(loud100.ks_poisson) + "/" +
            fmt(loud100.ks_wigner);
    // deep-overlap peak height, recorded for information only
    const auto fused = qbox::overlap_map(loud_spectrum, basis, {20, 40});
    g_info.push_back("overlap peak at defect 0.06 for anchor (20,40): " +
                     fmt(fused.max_weight));
  }
  report(ok, "spacing statistics flip from the uncorrelated to the "
             "level-repelling law as the defect grows (KS distances " +
             note + ")");
}

double mean_anchor_participation(const qbox::SpectralResult& spectrum,
                                 const qbox::Basis& basis,
                                 const std::vector<qbox::UnperturbedState>& anchors,
                                 const std::vector<double>& participation) {
  double sum = 0.0;
  for (const auto anchor : anchors) {
    const auto map = qbox::overlap_map(spectrum, basis, anchor);
    sum += participation[map.column];
  }
  return sum / static_cast<double>(anchors.size());
}

/* c5: eigenstates fed by anchors on a resonance line hybridize over many more
   basis states than eigenstates anchored in a resonance-free direction. */
void criterion_participation_contrast() {
  const int n_max = g_fast ? 50 : 100;
  const double eps = 0.02;
  const qbox::Basis basis(n_max);
  const auto spectrum = qbox::compute_spectrum(basis, eps);
  const auto participation = qbox::participation_numbers(spectrum);
  // centers of the 2:1 band (n2 = 2 n1) against near-diagonal states that no
  // band wide enough for quantum hybridization reaches at this defect
  const std::vector<qbox::UnperturbedState> on_line =
      g_fast ? std::vector<qbox::UnperturbedState>{{15, 30}, {18, 36}, {21, 42}}
             : std::vector<qbox::UnperturbedState>{{20, 40}, {25, 50}, {30, 60}};
  const std::vector<qbox::UnperturbedState> off_line =
      g_fast ? std::vector<qbox::UnperturbedState>{{23, 25}, {27, 29}, {31, 34}}
             : std::vector<qbox::UnperturbedState>{{37, 40}, {41, 45}, {45, 49}};
  const double on = mean_anchor_participation(spectrum, basis, on_line, participation);
  const double off =
      mean_anchor_participation(spectrum, basis, off_line, participation);
  report(on >= 1.5 * off, "on-line anchors hybridize at least 1.5x more basis "
                          "states than resonance-free anchors (mean participation " +
                              fmt(on) + " vs " + fmt(off) + ")");

  if (!g_fast) {
    // reference overlap peaks, recorded for information only: a gap state, a
    // 4:1 band center, and a 2:1 band center
    const std::array<qbox::UnperturbedState, 3> probes = {{{15, 42}, {11, 43}, {20, 40}}};
    std::string measured;
    for (const auto probe : probes) {
      const auto map = qbox::overlap_map(spectrum, basis, probe);
      measured += fmt(map.max_weight) + " ";
    }
    g_info.push_back("overlap peaks at defect 0.02 for anchors (15,42) (11,43) "
                     "(20,40): " + measured);
  }
}

/* c6: couplings between neighboring states of one resonance line approach the
   Fourier elements of the sawtooth potential as the line moves outward. */
double line_coupling_error(long long k) {
  const auto line = qbox::line_from_k(qbox::Resonance{2, 1}, k);
  const auto ham = qbox::effective_from_line(line);
  double worst = 0.0;
  for (long long j : {1, 3}) {
    // the model element is translation invariant, so compare against the
    // exact pair whose midpoint sits closest to the ray center
    const long long m0 = std::llround(-line.delta() - 0.5 * static_cast<double>(j));
    const double exact =
        qbox::matrix_element_exact(line.state_at(m0), line.state_at(m0 + j));
    const double model = qbox::effective_potential_element(ham, m0, m0 + j);
    worst = std::max(worst, std::abs(exact - model) / std::abs(model));
  }
  return worst;
}

void criterion_sawtooth_restriction() {
  const double near = line_coupling_error(112);   // ray radius about 50
  const double far = line_coupling_error(447);    // ray radius about 200
  const auto line = qbox::line_from_k(qbox::Resonance{2, 1}, 447);
  const double even_j =
      std::abs(qbox::matrix_element_exact(line.state_at(0), line.state_at(2)));
  const bool ok = near < 0.2 && far < 0.05 && far < near / 3.0 && even_j == 0.0;
  report(ok, "line couplings converge to the sawtooth Fourier law with radius "
             "(relative error " +
                 fmt(near) + " then " + fmt(far) + ", even step exactly zero)");
}

/* c7: classical benchmarks: energy conservation, equal-mass straightening,
   Monte Carlo against the closed form, and the amplitude identity. */
void criterion_classical() {
  bool ok = true;
  std::string detail;

  qbox::ClassicalState drift_state;
  drift_state.x1 = 0.2;
  drift_state.x2 = 0.55;
  drift_state.v1 = 0.9;
  drift_state.v2 = -0.37;
  drift_state.m1 = 1.0 / 1.3;
  drift_state.m2 = 1.0 / 0.7;
  const auto drift_traj = qbox::evolve_events(drift_state, 1000000, false);
  ok = ok && drift_traj.energy_drift < 1e-10;
  detail += "drift " + fmt(drift_traj.energy_drift);

  qbox::ClassicalState straight;
  straight.x1 = 0.2;
  straight.x2 = 0.55;
  straight.v1 = 1.0;
  straight.v2 = 0.6180339887498949;
  const auto traj = qbox::evolve_events(straight, 10000);
  qbox::UnfoldTracker tracker(straight.box_l);
  const auto start = tracker.unfold(straight.x1, straight.x2);
  const auto w = tracker.unfold_velocity(straight.v1, straight.v2);
  double worst = 0.0;
  for (const auto& ev : traj.events) {
    tracker.apply_event(ev.kind);
    const auto u = tracker.unfold(ev.x1, ev.x2);
    worst = std::max(worst, std::abs(u.u1 - (start.u1 + w.u1 * ev.t)));
    worst = std::max(worst, std::abs(u.u2 - (start.u2 + w.u2 * ev.t)));
  }
  ok = ok && worst <= 1e-9 * straight.box_l;
  detail += ", straightening " + fmt(worst);

  const std::size_t samples = 1000000;
  const double mc_node = qbox::prob_grey_mc(1.0, 2.0, 0.0, samples, 20260822);
  const double p_node = 2.0 / 3.0;
  const double sigma_node = std::sqrt(p_node * (1.0 - p_node) / samples);
  ok = ok && std::abs(mc_node - p_node) < 3.0 * sigma_node;
  const double quarter = 0.75 / std::sqrt(5.0);  // a quarter of the peak spacing
  const double mc_quarter = qbox::prob_grey_mc(1.0, 2.0, quarter, samples, 20260823);
  const double p_quarter = qbox::prob_grey({2, 1}, quarter);
  const double sigma_quarter = std::sqrt(p_quarter * (1.0 - p_quarter) / samples);
  ok = ok && std::abs(p_quarter - 5.0 / 12.0) < 1e-12;
  ok = ok && std::abs(mc_quarter - p_quarter) < 3.0 * sigma_quarter;
  detail += ", MC " + fmt(mc_node) + "/" + fmt(mc_quarter);

  double worst_identity = 0.0;
  for (const auto res : qbox::enumerate_resonances(41)) {
    const double s = static_cast<double>(res.norm2());
    for (int i = 0; i < 7; ++i) {
      const double offset = 0.19 * i;
      const double ebar = 900.0;
      const double lhs = qbox::averaged_potential(res, offset, ebar);
      const double p = qbox::prob_grey(res, offset);
      const double rhs = -ebar *
                         static_cast<double>(res.p * res.p - res.q * res.q) / s *
                         (2.0 * p - 1.0);
      worst_identity = std::max(worst_identity, std::abs(lhs - rhs));
    }
  }
  ok = ok && worst_identity <= 1e-12 * 900.0;

  report(ok, "classical benchmarks hold: " + detail + ", amplitude identity " +
                 fmt(worst_identity));
}

/* c8: the first-resonance threshold scales as the inverse square of the ray
   radius, and the refined no-gaps threshold matches its closed form. */
void criterion_thresholds() {
  std::vector<double> log_n, log_eps;
  for (const double nbar : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    log_n.push_back(std::log(nbar));
    log_eps.push_back(std::log(qbox::chaos_thresholds(nbar, 0.5).eps_first));
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    mean_x += log_n[i];
    mean_y += log_eps[i];
  }
  mean_x /= static_cast<double>(log_n.size());
  mean_y /= static_cast<double>(log_n.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sxx += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    sxy += (log_n[i] - mean_x) * (log_eps[i] - mean_y);
  }
  const double slope = sxy / sxx;

  const auto report44 = qbox::chaos_thresholds(44.5, 0.5);
  const double refined_closed = std::pow(std::numbers::pi, 8.0 / 3.0) / 32.0 *
                                std::pow(0.5, 2.0 / 3.0) /
                                std::pow(44.5, 2.0 / 3.0);
  const bool ok = std::abs(slope + 2.0) < 1e-12 &&
                  std::abs(report44.eps_no_gaps_refined - refined_closed) < 1e-12 &&
                  std::abs(report44.eps_no_gaps_refined - 0.0332) < 1e-4;
  report(ok, "first-resonance threshold scales as radius^-2 (slope " + fmt(slope) +
                 ") and the refined no-gaps threshold matches its closed form (" +
                 fmt(report44.eps_no_gaps_refined) + ")");
}

/* c9: stripe coverage of direction space: empty below the first threshold,
   monotone in the defect, and saturating for the classical scan. */
void criterion_coverage() {
  const double below = qbox::chaos_thresholds(44.5, 0.5).eps_first * 0.95;
  const auto zero = qbox::coverage_scan_quantum(below, 44.5, 0.5, 64);
  bool ok = zero.fraction == 0.0;
  double last = 0.0;
  for (const double eps : {1e-4, 1e-3, 6e-3, 2e-2, 5e-2}) {
    const auto scan = qbox::coverage_scan_quantum(eps, 44.5, 0.5, 64);
    ok = ok && scan.fraction >= last;
    last = scan.fraction;
  }
  ok = ok && last > 0.5;
  const auto classical = qbox::coverage_scan_classical(0.05, 64);
  ok = ok && classical.fraction == 1.0;
  const auto quantum = qbox::coverage_scan_quantum(0.05, 44.5, 0.5, 64);
  ok = ok && classical.fraction >= quantum.fraction;
  report(ok, "direction coverage is empty below the first threshold, monotone in "
             "the defect, and the classical scan saturates (top quantum fraction " +
                 fmt(last) + ")");
}

/* c10: the dense symmetric eigensolver on random matrices: residual,
   orthonormality, and trace budgets. */
void criterion_eigensolver() {
  bool ok = true;
  std::string detail;
  for (const int n : {100, 300, 1000}) {
    std::mt19937_64 rng(1234 + static_cast<unsigned>(n));
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
    const double scale = h.norm();
    const auto spectrum = qbox::solve_dense(h);
    const double residual = qbox::max_residual(h, spectrum);
    const double ortho = qbox::max_orthonormality_defect(spectrum.eigenvectors);
    double trace_gap = h.trace();
    for (const double lambda : spectrum.eigenvalues) trace_gap -= lambda;
    ok = ok && residual <= 1e-8 * scale && ortho <= 1e-10 &&
         std::abs(trace_gap) <= 1e-8 * scale;
    if (n == 1000)
      detail = "n=1000 residual " + fmt(residual / scale) + " ortho " + fmt(ortho);
  }
  report(ok, "dense symmetric eigensolver meets residual, orthonormality, and "
             "trace budgets on random matrices (" + detail + ")");
}

}  // namespace

int main() {
  const char* fast = std::getenv("QBOX_ACCEPT_FAST");
  g_fast = fast != nullptr && std::strcmp(fast, "1") == 0;
  if (g_fast) std::cout << "running with the reduced spectral basis\n";

  criterion("coupling oracle", criterion_couplings);
  criterion("direction enumeration", criterion_enumeration);
  criterion("line arithmetic", criterion_line_arithmetic);
  criterion("spacing flip", criterion_spacing_flip);
  criterion("participation contrast", criterion_participation_contrast);
  criterion("sawtooth restriction", criterion_sawtooth_restriction);
  criterion("classical benchmarks", criterion_classical);
  criterion("threshold scaling", criterion_thresholds);
  criterion("direction coverage", criterion_coverage);
  criterion("eigensolver budgets", criterion_eigensolver);

  for (const auto& line : g_info) std::cout << "[INFO] " << line << "\n";
  std::cout << "RESULT: " << (10 - g_failures) << "/10 criteria passed\n";
  return g_failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

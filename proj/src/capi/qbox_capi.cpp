#include "qbox/qbox.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
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
#include "qbox/level_statistics.hpp"
#include "qbox/matrix_elements.hpp"
#include "qbox/model.hpp"
#include "qbox/overlay.hpp"
#include "qbox/resonance.hpp"
#include "qbox/resonance_line.hpp"
#include "qbox/spectral_maps.hpp"
#include "qbox/thresholds.hpp"

struct qbx_spectrum {
  qbox::SpectralResult result;
};

struct qbx_trajectory {
  qbox::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

qbx_status map_code(qbox::ErrorCode code) {
  switch (code) {
    case qbox::ErrorCode::InvalidArgument: return QBX_ERR_INVALID_ARGUMENT;
    case qbox::ErrorCode::Range: return QBX_ERR_RANGE;
    case qbox::ErrorCode::Accuracy: return QBX_ERR_ACCURACY;
    case qbox::ErrorCode::Truncation: return QBX_ERR_TRUNCATION;
    case qbox::ErrorCode::Stall: return QBX_ERR_STALL;
    case qbox::ErrorCode::Computation: return QBX_ERR_COMPUTATION;
    case qbox::ErrorCode::Io: return QBX_ERR_IO;
  }
  return QBX_ERR_UNKNOWN;
}

template <typename F>
qbx_status wrap(F&& body) noexcept {
  try {
    body();
    return QBX_OK;
  } catch (const qbox::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QBX_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QBX_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return QBX_ERR_UNKNOWN;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr)
    qbox::fail(qbox::ErrorCode::InvalidArgument, std::string(name) + " must not be NULL");
}

void need_capacity(std::size_t capacity, std::size_t required, const char* what) {
  if (capacity < required)
    qbox::fail(qbox::ErrorCode::InvalidArgument,
               std::string(what) + " buffer too small: need " + std::to_string(required) +
                   ", got " + std::to_string(capacity));
}

qbox::Resonance to_cpp(qbx_resonance r) { return qbox::Resonance{r.p, r.q}; }

qbox::ClassicalState to_cpp(const qbx_classical_state& s) {
  qbox::ClassicalState out;
  out.x1 = s.x1;
  out.x2 = s.x2;
  out.v1 = s.v1;
  out.v2 = s.v2;
  out.m1 = s.m1;
  out.m2 = s.m2;
  out.box_l = s.box_l;
  out.t = s.t;
  return out;
}

qbx_classical_state to_c(const qbox::ClassicalState& s) {
  return qbx_classical_state{s.x1, s.x2, s.v1, s.v2, s.m1, s.m2, s.box_l, s.t};
}

const qbox::SpectralResult& deref(const qbx_spectrum* spectrum) {
  need(spectrum, "spectrum");
  return spectrum->result;
}

const qbox::Trajectory& deref(const qbx_trajectory* traj) {
  need(traj, "trajectory");
  return traj->traj;
}

qbox::EffectiveHamiltonian effective_from_info(const qbx_effective_info& info) {
  // Re-derive the reduction from (res, k); the remaining fields are outputs.
  return qbox::effective_from_line(qbox::line_from_k(to_cpp(info.res), info.k));
}

qbx_line_info to_c(const qbox::ResonanceLine& line) {
  qbx_line_info info;
  info.res = qbx_resonance{line.res.p, line.res.q};
  info.k = line.k;
  info.delta = line.delta();
  info.nbar1 = line.nbar1();
  info.nbar2 = line.nbar2();
  info.ebar = line.ebar();
  info.m_lo = line.m_lo;
  info.m_hi = line.m_hi;
  return info;
}

qbx_coverage to_c(const qbox::CoverageReport& report) {
  return qbx_coverage{report.fraction, report.norm2_cap, report.n_angles};
}

}  // namespace

extern "C" {

const char* qbx_version(void) { return "1.0.0"; }

const char* qbx_last_error(void) { return g_last_error.c_str(); }

/* ---------- basis ---------- */

qbx_status qbx_basis_size(int32_t n_max, size_t* out_size) {
  return wrap([&] {
    need(out_size, "out_size");
    *out_size = qbox::Basis(n_max).size();
  });
}

qbx_status qbx_basis_states(int32_t n_max, int32_t* out_pairs, size_t capacity,
                            size_t* out_count) {
  return wrap([&] {
    need(out_count, "out_count");
    const qbox::Basis basis(n_max);
    *out_count = basis.size();
    if (out_pairs == nullptr && capacity == 0) return;
    need(out_pairs, "out_pairs");
    need_capacity(capacity, basis.size(), "state");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      out_pairs[2 * i] = basis.state(i).n1;
      out_pairs[2 * i + 1] = basis.state(i).n2;
    }
  });
}

qbx_status qbx_basis_index(int32_t n_max, int32_t n1, int32_t n2, size_t* out_index) {
  return wrap([&] {
    need(out_index, "out_index");
    *out_index = qbox::Basis(n_max).index_of({n1, n2});
  });
}

/* ---------- matrix elements ---------- */

qbx_status qbx_matrix_element(int32_t n1, int32_t n2, int32_t m1, int32_t m2,
                              double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::matrix_element_exact({n1, n2}, {m1, m2});
  });
}

qbx_status qbx_matrix_element_approx(int32_t n1, int32_t n2, int32_t m1, int32_t m2,
                                     double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::matrix_element_approx({n1, n2}, {m1, m2});
  });
}

qbx_status qbx_matrix_element_quadrature(int32_t n1, int32_t n2, int32_t m1,
                                         int32_t m2, double abs_tol, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::matrix_element_quadrature({n1, n2}, {m1, m2}, abs_tol);
  });
}

/* ---------- spectra ---------- */

qbx_status qbx_spectrum_compute(int32_t n_max, double eps, int32_t n_threads,
                                qbx_spectrum** out) {
  return wrap([&] {
    need(out, "out");
    const qbox::Basis basis(n_max);
    auto handle = std::make_unique<qbx_spectrum>();
    handle->result = qbox::compute_spectrum(basis, eps, n_threads);
    *out = handle.release();
  });
}

qbx_status qbx_spectrum_from_data(int32_t n_max, double eps, const double* eigenvalues,
                                  const double* eigenvectors, size_t dim,
                                  qbx_spectrum** out) {
  return wrap([&] {
    need(out, "out");
    need(eigenvalues, "eigenvalues");
    need(eigenvectors, "eigenvectors");
    const qbox::Basis basis(n_max);
    if (dim != basis.size())
      qbox::fail(qbox::ErrorCode::InvalidArgument,
                 "dimension " + std::to_string(dim) + " does not match the basis size " +
                     std::to_string(basis.size()));
    if (!std::is_sorted(eigenvalues, eigenvalues + dim))
      qbox::fail(qbox::ErrorCode::InvalidArgument, "eigenvalues must be ascending");
    auto handle = std::make_unique<qbx_spectrum>();
    handle->result.n_max = n_max;
    handle->result.eps = eps;
    handle->result.eigenvalues.assign(eigenvalues, eigenvalues + dim);
    handle->result.eigenvectors = Eigen::Map<const Eigen::MatrixXd>(
        eigenvectors, static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    *out = handle.release();
  });
}

void qbx_spectrum_free(qbx_spectrum* spectrum) { delete spectrum; }

qbx_status qbx_spectrum_dim(const qbx_spectrum* spectrum, size_t* out_dim) {
  return wrap([&] {
    need(out_dim, "out_dim");
    *out_dim = deref(spectrum).eigenvalues.size();
  });
}

qbx_status qbx_spectrum_n_max(const qbx_spectrum* spectrum, int32_t* out_n_max) {
  return wrap([&] {
    need(out_n_max, "out_n_max");
    *out_n_max = deref(spectrum).n_max;
  });
}

qbx_status qbx_spectrum_eps(const qbx_spectrum* spectrum, double* out_eps) {
  return wrap([&] {
    need(out_eps, "out_eps");
    *out_eps = deref(spectrum).eps;
  });
}

qbx_status qbx_spectrum_eigenvalues(const qbx_spectrum* spectrum, double* out,
                                    size_t capacity) {
  return wrap([&] {
    need(out, "out");
    const auto& result = deref(spectrum);
    need_capacity(capacity, result.eigenvalues.size(), "eigenvalue");
    std::copy(result.eigenvalues.begin(), result.eigenvalues.end(), out);
  });
}

qbx_status qbx_spectrum_eigenvectors(const qbx_spectrum* spectrum, double* out,
                                     size_t capacity) {
  return wrap([&] {
    need(out, "out");
    const auto& result = deref(spectrum);
    const std::size_t total = result.eigenvalues.size() * result.eigenvalues.size();
    need_capacity(capacity, total, "eigenvector");
    std::memcpy(out, result.eigenvectors.data(), total * sizeof(double));
  });
}

qbx_status qbx_spectrum_participation(const qbx_spectrum* spectrum, double* out,
                                      size_t capacity) {
  return wrap([&] {
    need(out, "out");
    const auto& result = deref(spectrum);
    need_capacity(capacity, result.eigenvalues.size(), "participation");
    const auto numbers = qbox::participation_numbers(result);
    std::copy(numbers.begin(), numbers.end(), out);
  });
}

qbx_status qbx_spectrum_overlap_map(const qbx_spectrum* spectrum, int32_t anchor_n1,
                                    int32_t anchor_n2, size_t* out_column,
                                    double* out_max_weight, double* out_weights,
                                    size_t capacity) {
  return wrap([&] {
    const auto& result = deref(spectrum);
    const qbox::Basis basis(result.n_max);
    const auto map = qbox::overlap_map(result, basis, {anchor_n1, anchor_n2});
    if (out_weights != nullptr)
      need_capacity(capacity, map.weights.size(), "weight");
    if (out_column != nullptr) *out_column = map.column;
    if (out_max_weight != nullptr) *out_max_weight = map.max_weight;
    if (out_weights != nullptr)
      std::copy(map.weights.begin(), map.weights.end(), out_weights);
  });
}

/* ---------- level statistics ---------- */

qbx_status qbx_level_statistics(const double* energies, size_t n_energies,
                                double e_lo, double e_hi, size_t min_levels,
                                qbx_level_stats* out_stats, double* out_spacings,
                                size_t capacity) {
  return wrap([&] {
    need(out_stats, "out_stats");
    need(energies, "energies");
    const std::vector<double> levels(energies, energies + n_energies);
    const auto stats = min_levels == 0
                           ? qbox::level_statistics(levels, e_lo, e_hi)
                           : qbox::level_statistics(levels, e_lo, e_hi, min_levels);
    if (out_spacings != nullptr) {
      need_capacity(capacity, stats.spacings.size(), "spacing");
      std::copy(stats.spacings.begin(), stats.spacings.end(), out_spacings);
    }
    out_stats->e_lo = stats.e_lo;
    out_stats->e_hi = stats.e_hi;
    out_stats->count = stats.count;
    out_stats->mean_unfolded_spacing = stats.mean_unfolded_spacing;
    out_stats->ks_poisson = stats.ks_poisson;
    out_stats->ks_wigner = stats.ks_wigner;
  });
}

double qbx_spacing_cdf_poisson(double s) { return qbox::spacing_cdf_poisson(s); }

double qbx_spacing_cdf_wigner(double s) { return qbox::spacing_cdf_wigner(s); }

/* ---------- resonances ---------- */

qbx_status qbx_enumerate_resonances(int64_t norm2_max, qbx_resonance* out,
                                    size_t capacity, size_t* out_count) {
  return wrap([&] {
    need(out_count, "out_count");
    const auto list = qbox::enumerate_resonances(norm2_max);
    *out_count = list.size();
    if (out == nullptr && capacity == 0) return;
    need(out, "out");
    need_capacity(capacity, list.size(), "resonance");
    for (std::size_t i = 0; i < list.size(); ++i)
      out[i] = qbx_resonance{list[i].p, list[i].q};
  });
}

qbx_status qbx_post_select(qbx_resonance res, double nbar, double eps,
                           double m_max_min, int32_t* out_selected,
                           int32_t* out_approx_valid, double* out_m_max) {
  return wrap([&] {
    const auto post = qbox::post_select(to_cpp(res), nbar, eps, m_max_min);
    if (out_selected != nullptr) *out_selected = post.selected ? 1 : 0;
    if (out_approx_valid != nullptr) *out_approx_valid = post.approx_valid ? 1 : 0;
    if (out_m_max != nullptr) *out_m_max = post.m_max;
  });
}

/* ---------- lines and the effective model ---------- */

qbx_status qbx_line_through(int32_t n1, int32_t n2, qbx_resonance res,
                            qbx_line_info* out) {
  return wrap([&] {
    need(out, "out");
    *out = to_c(qbox::line_through({n1, n2}, to_cpp(res)));
  });
}

qbx_status qbx_line_from_k(qbx_resonance res, int64_t k, qbx_line_info* out) {
  return wrap([&] {
    need(out, "out");
    *out = to_c(qbox::line_from_k(to_cpp(res), k));
  });
}

qbx_status qbx_line_state_at(const qbx_line_info* line, int64_t m, int32_t* out_n1,
                             int32_t* out_n2) {
  return wrap([&] {
    need(line, "line");
    need(out_n1, "out_n1");
    need(out_n2, "out_n2");
    const auto cpp_line = qbox::line_from_k(to_cpp(line->res), line->k);
    const auto state = cpp_line.state_at(m);
    *out_n1 = state.n1;
    *out_n2 = state.n2;
  });
}

qbx_status qbx_effective_from_k(qbx_resonance res, int64_t k, qbx_effective_info* out) {
  return wrap([&] {
    need(out, "out");
    const auto ham = qbox::effective_from_line(qbox::line_from_k(to_cpp(res), k));
    out->res = qbx_resonance{ham.res.p, ham.res.q};
    out->k = ham.k;
    out->delta = ham.delta;
    out->kinetic_prefactor = ham.kinetic_prefactor;
    out->v0 = ham.v0;
    out->uses_sine_basis = ham.basis_kind == qbox::EffectiveBasisKind::Sine ? 1 : 0;
  });
}

qbx_status qbx_effective_dim(const qbx_effective_info* info, double eps, int32_t m_cut,
                             size_t* out_dim) {
  return wrap([&] {
    need(info, "info");
    need(out_dim, "out_dim");
    const auto ham = effective_from_info(*info);
    const int cut = m_cut == 0 ? qbox::default_m_cut(ham, eps) : m_cut;
    if (cut <= 0)
      qbox::fail(qbox::ErrorCode::InvalidArgument, "m_cut must be positive");
    *out_dim = ham.basis_kind == qbox::EffectiveBasisKind::Sine
                   ? static_cast<size_t>(cut)
                   : static_cast<size_t>(2 * static_cast<long long>(cut) + 1);
  });
}

qbx_status qbx_effective_solve(const qbx_effective_info* info, double eps,
                               int32_t m_cut, double* out_eigenvalues,
                               size_t capacity, size_t* out_bound_count,
                               double* out_m_max) {
  return wrap([&] {
    need(info, "info");
    need(out_eigenvalues, "out_eigenvalues");
    const auto ham = effective_from_info(*info);
    const int cut = m_cut == 0 ? qbox::default_m_cut(ham, eps) : m_cut;
    const auto spectrum = qbox::solve_effective(ham, eps, cut);
    need_capacity(capacity, spectrum.eigenvalues.size(), "eigenvalue");
    std::copy(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
              out_eigenvalues);
    if (out_bound_count != nullptr) *out_bound_count = spectrum.bound_count;
    if (out_m_max != nullptr) *out_m_max = spectrum.m_max;
  });
}

/* ---------- thresholds ---------- */

qbx_status qbx_chaos_thresholds(double nbar, double m_max_min, double box_l,
                                double m0, double hbar, qbx_thresholds* out) {
  return wrap([&] {
    need(out, "out");
    qbox::ModelParams params;
    params.box_l = box_l;
    params.m0 = m0;
    params.hbar = hbar;
    const auto report = qbox::chaos_thresholds(nbar, m_max_min, params);
    out->eps_first = report.eps_first;
    out->eps_no_gaps_rough = report.eps_no_gaps_rough;
    out->eps_no_gaps_refined = report.eps_no_gaps_refined;
    out->dimensional_form = report.dimensional_form;
  });
}

qbx_status qbx_manybody_threshold(double n1d, double mass, double kb_t, double hbar,
                                  double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::manybody_threshold(n1d, mass, kb_t, hbar);
  });
}

/* ---------- overlay ---------- */

qbx_status qbx_resonance_overlay(int32_t n_max, double eps, double m_max_min,
                                 qbx_overlay_segment* out, size_t capacity,
                                 size_t* out_count) {
  return wrap([&] {
    need(out_count, "out_count");
    const auto segments = qbox::resonance_overlay(n_max, eps, m_max_min);
    *out_count = segments.size();
    if (out == nullptr && capacity == 0) return;
    need(out, "out");
    need_capacity(capacity, segments.size(), "segment");
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const auto& seg = segments[i];
      out[i].res = qbx_resonance{seg.res.p, seg.res.q};
      out[i].k = seg.k;
      out[i].m_max = seg.m_max;
      out[i].n1_start = seg.n1_start;
      out[i].n2_start = seg.n2_start;
      out[i].n1_end = seg.n1_end;
      out[i].n2_end = seg.n2_end;
    }
  });
}

/* ---------- classical dynamics ---------- */

qbx_status qbx_evolve_events(const qbx_classical_state* start, size_t n_events,
                             int32_t record, qbx_trajectory** out) {
  return wrap([&] {
    need(start, "start");
    need(out, "out");
    auto handle = std::make_unique<qbx_trajectory>();
    handle->traj = qbox::evolve_events(to_cpp(*start), n_events, record != 0);
    *out = handle.release();
  });
}

qbx_status qbx_evolve_time(const qbx_classical_state* start, double t_end,
                           int32_t record, qbx_trajectory** out) {
  return wrap([&] {
    need(start, "start");
    need(out, "out");
    auto handle = std::make_unique<qbx_trajectory>();
    handle->traj = qbox::evolve_time(to_cpp(*start), t_end, record != 0);
    *out = handle.release();
  });
}

void qbx_trajectory_free(qbx_trajectory* traj) { delete traj; }

qbx_status qbx_trajectory_final(const qbx_trajectory* traj, qbx_classical_state* out) {
  return wrap([&] {
    need(out, "out");
    *out = to_c(deref(traj).final_state);
  });
}

qbx_status qbx_trajectory_drift(const qbx_trajectory* traj, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = deref(traj).energy_drift;
  });
}

qbx_status qbx_trajectory_event_count(const qbx_trajectory* traj, size_t* out_count) {
  return wrap([&] {
    need(out_count, "out_count");
    *out_count = deref(traj).event_count;
  });
}

qbx_status qbx_trajectory_events(const qbx_trajectory* traj, qbx_classical_event* out,
                                 size_t capacity, size_t* out_count) {
  return wrap([&] {
    need(out_count, "out_count");
    const auto& events = deref(traj).events;
    *out_count = events.size();
    if (out == nullptr && capacity == 0) return;
    need(out, "out");
    need_capacity(capacity, events.size(), "event");
    for (std::size_t i = 0; i < events.size(); ++i) {
      out[i].kind = static_cast<int32_t>(events[i].kind);
      out[i].t = events[i].t;
      out[i].x1 = events[i].x1;
      out[i].x2 = events[i].x2;
      out[i].v1 = events[i].v1;
      out[i].v2 = events[i].v2;
    }
  });
}

qbx_status qbx_trajectory_unfolded(const qbx_trajectory* traj, double* out_pairs,
                                   size_t capacity, size_t* out_count) {
  return wrap([&] {
    need(out_count, "out_count");
    const auto& trajectory = deref(traj);
    const auto& events = trajectory.events;
    *out_count = events.size();
    if (out_pairs == nullptr && capacity == 0) return;
    need(out_pairs, "out_pairs");
    need_capacity(capacity, events.size(), "point");
    qbox::UnfoldTracker tracker(trajectory.final_state.box_l);
    for (std::size_t i = 0; i < events.size(); ++i) {
      tracker.apply_event(events[i].kind);
      const auto u = tracker.unfold(events[i].x1, events[i].x2);
      out_pairs[2 * i] = u.u1;
      out_pairs[2 * i + 1] = u.u2;
    }
  });
}

/* ---------- averaged perturbation ---------- */

qbx_status qbx_prob_grey(qbx_resonance res, double offset, double box_l, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::prob_grey(to_cpp(res), offset, box_l);
  });
}

qbx_status qbx_prob_grey_direction(int64_t a, int64_t b, double offset, double box_l,
                                   double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::prob_grey_direction(a, b, offset, box_l);
  });
}

qbx_status qbx_prob_grey_mc(double dir1, double dir2, double offset, size_t n_samples,
                            uint64_t seed, double box_l, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::prob_grey_mc(dir1, dir2, offset, n_samples, seed, box_l);
  });
}

qbx_status qbx_averaged_potential(qbx_resonance res, double offset, double ebar,
                                  double box_l, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::averaged_potential(to_cpp(res), offset, ebar, box_l);
  });
}

/* ---------- stripe geometry and coverage ---------- */

qbx_status qbx_resonance_angular_halfwidth(double eps, int64_t norm2, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::resonance_angular_halfwidth(eps, norm2);
  });
}

qbx_status qbx_stripe_width(double eps, double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::stripe_width(eps);
  });
}

qbx_status qbx_quantum_direction_radius(double eps, double nbar, double m_max_min,
                                        double* out) {
  return wrap([&] {
    need(out, "out");
    *out = qbox::quantum_direction_radius(eps, nbar, m_max_min);
  });
}

qbx_status qbx_coverage_scan_quantum(double eps, double nbar, double m_max_min,
                                     int32_t n_angles, qbx_coverage* out) {
  return wrap([&] {
    need(out, "out");
    *out = to_c(qbox::coverage_scan_quantum(eps, nbar, m_max_min, n_angles));
  });
}

qbx_status qbx_coverage_scan_classical(double eps, int32_t n_angles, qbx_coverage* out) {
  return wrap([&] {
    need(out, "out");
    *out = to_c(qbox::coverage_scan_classical(eps, n_angles));
  });
}

} /* extern "C" */

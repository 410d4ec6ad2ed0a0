/* C interface to the hard-core pair-in-a-box spectral and resonance library.
 *
 * Conventions:
 *  - Every fallible call returns qbx_status; QBX_OK is zero. On failure the
 *    thread-local message qbx_last_error() describes the reason and all out
 *    parameters are left untouched unless noted.
 *  - Array outputs use a caller buffer plus capacity. Passing a NULL buffer
 *    with capacity 0 is allowed where noted and just reports the count.
 *  - Spectra and trajectories are returned as opaque handles that must be
 *    released with the matching *_free call. Handles are immutable after
 *    creation and safe to read from several threads at once.
 *  - Energies are in units of T0 = hbar^2 pi^2 / (2 M0 L^2) with M0 the
 *    harmonic mean mass; the mass defect eps = (M2 - M1) / (M1 + M2).
 */
#ifndef QBOX_QBOX_H
#define QBOX_QBOX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qbx_status {
  QBX_OK = 0,
  QBX_ERR_INVALID_ARGUMENT = 1,
  QBX_ERR_RANGE = 2,
  QBX_ERR_ACCURACY = 3,
  QBX_ERR_TRUNCATION = 4,
  QBX_ERR_STALL = 5,
  QBX_ERR_COMPUTATION = 6,
  QBX_ERR_IO = 7,
  QBX_ERR_NOMEM = 8,
  QBX_ERR_UNKNOWN = 9
} qbx_status;

/* Library version, e.g. "1.0.0". Never NULL. */
const char* qbx_version(void);

/* Message of the most recent failure on the calling thread; empty string if
 * none. The pointer stays valid until the next failing call on this thread. */
const char* qbx_last_error(void);

/* ---------- unperturbed pair basis ---------- */

/* Number of states (n1, n2), 1 <= n1 < n2 <= n_max. */
qbx_status qbx_basis_size(int32_t n_max, size_t* out_size);

/* All states in spectral order (energy ascending, ties by n1), written as
 * interleaved pairs n1, n2. capacity counts pairs; NULL/0 reports the count
 * only. */
qbx_status qbx_basis_states(int32_t n_max, int32_t* out_pairs, size_t capacity,
                            size_t* out_count);

/* Position of a state in spectral order. */
qbx_status qbx_basis_index(int32_t n_max, int32_t n1, int32_t n2,
                           size_t* out_index);

/* ---------- perturbation matrix elements (units of T0, defect factored out) */

/* Closed-form element between pair states (n1, n2) and (m1, m2). Zero for
 * even total parity. */
qbx_status qbx_matrix_element(int32_t n1, int32_t n2, int32_t m1, int32_t m2,
                              double* out);

/* Large-n asymptotic form of the same element. */
qbx_status qbx_matrix_element_approx(int32_t n1, int32_t n2, int32_t m1,
                                     int32_t m2, double* out);

/* Independent adaptive-quadrature evaluation, to absolute tolerance abs_tol. */
qbx_status qbx_matrix_element_quadrature(int32_t n1, int32_t n2, int32_t m1,
                                         int32_t m2, double abs_tol,
                                         double* out);

/* ---------- dense spectra ---------- */

typedef struct qbx_spectrum qbx_spectrum;

/* Assemble and diagonalize the pair Hamiltonian at defect eps. n_threads = 0
 * uses all hardware threads for assembly. */
qbx_status qbx_spectrum_compute(int32_t n_max, double eps, int32_t n_threads,
                                qbx_spectrum** out);

/* Rebuild a spectrum handle from stored data (e.g. a cache file). eigenvalues
 * holds dim entries ascending; eigenvectors holds dim * dim entries, columns
 * contiguous, column j belonging to eigenvalue j. dim must equal the basis
 * size for n_max. */
qbx_status qbx_spectrum_from_data(int32_t n_max, double eps,
                                  const double* eigenvalues,
                                  const double* eigenvectors, size_t dim,
                                  qbx_spectrum** out);

void qbx_spectrum_free(qbx_spectrum* spectrum);

qbx_status qbx_spectrum_dim(const qbx_spectrum* spectrum, size_t* out_dim);
qbx_status qbx_spectrum_n_max(const qbx_spectrum* spectrum, int32_t* out_n_max);
qbx_status qbx_spectrum_eps(const qbx_spectrum* spectrum, double* out_eps);

/* Eigenvalues ascending; capacity must be at least the dimension. */
qbx_status qbx_spectrum_eigenvalues(const qbx_spectrum* spectrum, double* out,
                                    size_t capacity);

/* Eigenvector matrix, columns contiguous; capacity counts doubles and must be
 * at least dim * dim. */
qbx_status qbx_spectrum_eigenvectors(const qbx_spectrum* spectrum, double* out,
                                     size_t capacity);

/* Participation number of every eigenstate (1 = one basis state, dim =
 * uniform spread). Refused at eps = 0 where the eigenbasis is arbitrary. */
qbx_status qbx_spectrum_participation(const qbx_spectrum* spectrum, double* out,
                                      size_t capacity);

/* Eigenstate fed most strongly by the unperturbed anchor (n1, n2): its column
 * index, its largest squared component, and optionally the full squared
 * component distribution over basis indices (out_weights may be NULL). */
qbx_status qbx_spectrum_overlap_map(const qbx_spectrum* spectrum,
                                    int32_t anchor_n1, int32_t anchor_n2,
                                    size_t* out_column, double* out_max_weight,
                                    double* out_weights, size_t capacity);

/* ---------- level statistics ---------- */

typedef struct qbx_level_stats {
  double e_lo;
  double e_hi;
  size_t count;                  /* levels inside the band */
  double mean_unfolded_spacing;  /* within 2% of 1 by construction */
  double ks_poisson;             /* KS distance to the uncorrelated law */
  double ks_wigner;              /* KS distance to the level-repelling law */
} qbx_level_stats;

/* Nearest-neighbor spacing statistics of the sorted energies inside
 * [e_lo, e_hi], unfolded to unit mean density. min_levels = 0 keeps the
 * default minimum band population. out_spacings (count - 1 entries) may be
 * NULL; pass the band population from a first call to size it. */
qbx_status qbx_level_statistics(const double* energies, size_t n_energies,
                                double e_lo, double e_hi, size_t min_levels,
                                qbx_level_stats* out_stats,
                                double* out_spacings, size_t capacity);

/* Reference spacing laws as cumulative distributions. */
double qbx_spacing_cdf_poisson(double s);
double qbx_spacing_cdf_wigner(double s);

/* ---------- resonance taxonomy ---------- */

typedef struct qbx_resonance {
  int32_t p;
  int32_t q;
} qbx_resonance;

/* All frequency ratios p:q with p > q >= 0, coprime, opposite parity and
 * p^2 + q^2 <= norm2_max, sorted by p^2 + q^2 then p. NULL/0 buffer reports
 * the count only. */
qbx_status qbx_enumerate_resonances(int64_t norm2_max, qbx_resonance* out,
                                    size_t capacity, size_t* out_count);

/* Post-selection of a resonance at mean radius nbar: the half-width m_max in
 * lattice steps, whether it clears m_max_min, and whether the one-dimensional
 * reduction is still valid there. */
qbx_status qbx_post_select(qbx_resonance res, double nbar, double eps,
                           double m_max_min, int32_t* out_selected,
                           int32_t* out_approx_valid, double* out_m_max);

/* ---------- resonance lines and the effective model ---------- */

typedef struct qbx_line_info {
  qbx_resonance res;
  int64_t k;       /* conserved combination q n1 + p n2 */
  double delta;    /* lattice offset from the ray crossing, in (-1/2, 1/2] */
  double nbar1;    /* ray crossing q k / s */
  double nbar2;    /* ray crossing p k / s */
  double ebar;     /* ray energy k^2 / s */
  int64_t m_lo;    /* admissible lattice window (empty when m_lo > m_hi) */
  int64_t m_hi;
} qbx_line_info;

/* Line of resonance res through the state (n1, n2). */
qbx_status qbx_line_through(int32_t n1, int32_t n2, qbx_resonance res,
                            qbx_line_info* out);

/* Line of resonance res with conserved combination k. */
qbx_status qbx_line_from_k(qbx_resonance res, int64_t k, qbx_line_info* out);

/* Pair state at lattice position m on the line; m must lie in the window. */
qbx_status qbx_line_state_at(const qbx_line_info* line, int64_t m,
                             int32_t* out_n1, int32_t* out_n2);

typedef struct qbx_effective_info {
  qbx_resonance res;
  int64_t k;
  double delta;
  double kinetic_prefactor; /* p^2 + q^2 */
  double v0;                /* well depth scale k^2 / (p^2+q^2)^2 */
  int32_t uses_sine_basis;  /* 1 for the hard-wall 1:0 reduction, else 0 */
} qbx_effective_info;

/* One-degree-of-freedom reduction of the line with conserved combination k. */
qbx_status qbx_effective_from_k(qbx_resonance res, int64_t k,
                                qbx_effective_info* out);

/* Dimension of the truncated effective model at cutoff m_cut (m_cut = 0 picks
 * the default cutoff for this eps). */
qbx_status qbx_effective_dim(const qbx_effective_info* info, double eps,
                             int32_t m_cut, size_t* out_dim);

/* Eigenvalues of the truncated model, ascending, units of T0. capacity must
 * cover the dimension reported by qbx_effective_dim for the same m_cut.
 * out_bound_count counts levels below the well rim eps * v0; out_m_max is the
 * resonance half-width in lattice steps. Either may be NULL. */
qbx_status qbx_effective_solve(const qbx_effective_info* info, double eps,
                               int32_t m_cut, double* out_eigenvalues,
                               size_t capacity, size_t* out_bound_count,
                               double* out_m_max);

/* ---------- chaos thresholds ---------- */

typedef struct qbx_thresholds {
  double eps_first;           /* first resonance passes post-selection */
  double eps_no_gaps_rough;   /* order-of-magnitude overlap estimate */
  double eps_no_gaps_refined; /* refined overlap estimate */
  double dimensional_form;    /* same scale from hbar, M0, Ebar, L */
} qbx_thresholds;

qbx_status qbx_chaos_thresholds(double nbar, double m_max_min, double box_l,
                                double m0, double hbar, qbx_thresholds* out);

/* Defect scale for full overlap of a one-dimensional gas at temperature kb_t
 * and line density n1d. */
qbx_status qbx_manybody_threshold(double n1d, double mass, double kb_t,
                                  double hbar, double* out);

/* ---------- resonance overlay ---------- */

typedef struct qbx_overlay_segment {
  qbx_resonance res;
  int64_t k;
  double m_max;
  double n1_start; /* m = -m_max end of the stroke, (n1, n2) coordinates */
  double n2_start;
  double n1_end;   /* m = +m_max end */
  double n2_end;
} qbx_overlay_segment;

/* Post-selected resonance strokes inside the square n1, n2 <= n_max, ordered
 * by resonance then k. NULL/0 buffer reports the count only. */
qbx_status qbx_resonance_overlay(int32_t n_max, double eps, double m_max_min,
                                 qbx_overlay_segment* out, size_t capacity,
                                 size_t* out_count);

/* ---------- classical hard-core dynamics ---------- */

typedef struct qbx_classical_state {
  double x1;
  double x2;
  double v1;
  double v2;
  double m1;
  double m2;
  double box_l;
  double t;
} qbx_classical_state;

enum {
  QBX_EVENT_WALL_LEFT = 0,
  QBX_EVENT_CONTACT = 1,
  QBX_EVENT_WALL_RIGHT = 2
};

typedef struct qbx_classical_event {
  int32_t kind; /* QBX_EVENT_* */
  double t;
  double x1; /* state right after the event */
  double x2;
  double v1;
  double v2;
} qbx_classical_event;

typedef struct qbx_trajectory qbx_trajectory;

/* Run exactly n_events wall bounces / pair collisions. record = 0 keeps only
 * the final state and drift. */
qbx_status qbx_evolve_events(const qbx_classical_state* start, size_t n_events,
                             int32_t record, qbx_trajectory** out);

/* Run every event up to t_end, then coast exactly to t_end. */
qbx_status qbx_evolve_time(const qbx_classical_state* start, double t_end,
                           int32_t record, qbx_trajectory** out);

void qbx_trajectory_free(qbx_trajectory* traj);

qbx_status qbx_trajectory_final(const qbx_trajectory* traj,
                                qbx_classical_state* out);
/* Relative energy drift |E_end - E_start| / E_start. */
qbx_status qbx_trajectory_drift(const qbx_trajectory* traj, double* out);
/* Number of events processed (recorded or not). */
qbx_status qbx_trajectory_event_count(const qbx_trajectory* traj,
                                      size_t* out_count);
/* Recorded events; capacity must cover the recorded count (equal to the
 * event count when recording was on). NULL/0 reports the count only. */
qbx_status qbx_trajectory_events(const qbx_trajectory* traj,
                                 qbx_classical_event* out, size_t capacity,
                                 size_t* out_count);
/* Straightened coordinates of every recorded event, written as interleaved
 * u1, u2 pairs: the running mirror chart maps the bouncing trajectory onto a
 * straight line. capacity counts pairs. */
qbx_status qbx_trajectory_unfolded(const qbx_trajectory* traj, double* out_pairs,
                                   size_t capacity, size_t* out_count);

/* ---------- averaged perturbation along resonant directions ---------- */

/* Fraction of travel time with particle 2 the outer one, for a straight
 * unfolded trajectory of direction (q, p) displaced by offset along the unit
 * normal. */
qbx_status qbx_prob_grey(qbx_resonance res, double offset, double box_l,
                         double* out);

/* Same for an arbitrary direction (a, b) >= 0; same-parity rational
 * directions give exactly one half. */
qbx_status qbx_prob_grey_direction(int64_t a, int64_t b, double offset,
                                   double box_l, double* out);

/* Monte Carlo estimate along the displaced line; integer directions sample
 * exactly one lattice period. Deterministic for a fixed seed. */
qbx_status qbx_prob_grey_mc(double dir1, double dir2, double offset,
                            size_t n_samples, uint64_t seed, double box_l,
                            double* out);

/* Time-averaged coupling -(ebar / s) saw(offset sqrt(s) / box_l). */
qbx_status qbx_averaged_potential(qbx_resonance res, double offset, double ebar,
                                  double box_l, double* out);

/* ---------- stripe geometry and direction coverage ---------- */

/* Angular half-width sqrt(2 eps / s) of the stripe around a direction of
 * squared norm s. */
qbx_status qbx_resonance_angular_halfwidth(double eps, int64_t norm2,
                                           double* out);

/* Action-space stripe width 2 sqrt(2 eps) relative to nbar. */
qbx_status qbx_stripe_width(double eps, double* out);

/* Largest direction norm passing post-selection at (eps, nbar, m_max_min). */
qbx_status qbx_quantum_direction_radius(double eps, double nbar,
                                        double m_max_min, double* out);

typedef struct qbx_coverage {
  double fraction;   /* covered share of probe angles */
  int64_t norm2_cap; /* largest squared direction norm admitted */
  int32_t n_angles;
} qbx_coverage;

/* Share of probe directions in the open wedge covered by post-selected
 * resonance stripes. */
qbx_status qbx_coverage_scan_quantum(double eps, double nbar, double m_max_min,
                                     int32_t n_angles, qbx_coverage* out);

/* Same without the quantum cutoff; the direction radius doubles until every
 * angle is covered or the ladder tops out. */
qbx_status qbx_coverage_scan_classical(double eps, int32_t n_angles,
                                       qbx_coverage* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QBOX_QBOX_H */

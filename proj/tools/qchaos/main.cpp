// Command-line front end for the pair-in-a-box resonance and spectral library.
// Every computation goes through the public C interface.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbox/qbox.h"

#include "cache.hpp"
#include "output.hpp"

namespace {

using qchaos::Cell;
using qchaos::SpectrumData;
using qchaos::Table;

// Exit codes: 0 success, 2 bad arguments, 3 failed computation, 4 I/O failure.
struct CliError {
  int exit_code;
  std::string message;
};

int status_exit_code(qbx_status status) {
  switch (status) {
    case QBX_OK: return 0;
    case QBX_ERR_INVALID_ARGUMENT: return 2;
    case QBX_ERR_IO: return 4;
    default: return 3;
  }
}

void check(qbx_status status, const std::string& context) {
  if (status != QBX_OK)
    throw CliError{status_exit_code(status), context + ": " + qbx_last_error()};
}

std::vector<double> parse_list(const std::string& text, std::size_t expected,
                               const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw CliError{2, what + ": cannot parse '" + token + "' as a number"};
    }
  }
  if (values.size() != expected)
    throw CliError{2, what + ": expected " + std::to_string(expected) +
                          " comma-separated values, got " +
                          std::to_string(values.size())};
  return values;
}

struct IoOptions {
  std::string format = "csv";
  std::string out_path;

  void write(const Table& table) const {
    try {
      qchaos::OutputTarget{out_path}.write(table, format);
    } catch (const std::exception& e) {
      throw CliError{4, std::string("writing output failed: ") + e.what()};
    }
  }
};

void add_io_options(CLI::App* cmd, IoOptions& io) {
  cmd->add_option("--format", io.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", io.out_path, "Write to this file instead of stdout");
}

struct SpectrumHandle {
  qbx_spectrum* ptr = nullptr;
  SpectrumHandle() = default;
  SpectrumHandle(const SpectrumHandle&) = delete;
  SpectrumHandle& operator=(const SpectrumHandle&) = delete;
  ~SpectrumHandle() { qbx_spectrum_free(ptr); }
};

struct TrajectoryHandle {
  qbx_trajectory* ptr = nullptr;
  TrajectoryHandle() = default;
  TrajectoryHandle(const TrajectoryHandle&) = delete;
  TrajectoryHandle& operator=(const TrajectoryHandle&) = delete;
  ~TrajectoryHandle() { qbx_trajectory_free(ptr); }
};

// Loads from the cache when allowed, otherwise diagonalizes (and stores when
// caching is on). cache_note describes what happened for the output metadata.
void acquire_spectrum(int32_t n_max, double eps, bool use_cache, int32_t threads,
                      SpectrumHandle& handle, std::string& cache_note) {
  if (use_cache) {
    SpectrumData data;
    if (qchaos::load_cached(n_max, eps, data)) {
      check(qbx_spectrum_from_data(n_max, eps, data.eigenvalues.data(),
                                   data.eigenvectors.data(),
                                   data.eigenvalues.size(), &handle.ptr),
            "loading cached spectrum");
      cache_note = "hit";
      return;
    }
  }
  check(qbx_spectrum_compute(n_max, eps, threads, &handle.ptr),
        "computing spectrum");
  if (!use_cache) {
    cache_note = "off";
    return;
  }
  SpectrumData data;
  data.n_max = n_max;
  data.eps = eps;
  size_t dim = 0;
  check(qbx_spectrum_dim(handle.ptr, &dim), "reading dimension");
  data.eigenvalues.resize(dim);
  data.eigenvectors.resize(dim * dim);
  check(qbx_spectrum_eigenvalues(handle.ptr, data.eigenvalues.data(), dim),
        "exporting eigenvalues");
  check(qbx_spectrum_eigenvectors(handle.ptr, data.eigenvectors.data(), dim * dim),
        "exporting eigenvectors");
  std::string error;
  if (qchaos::store_cached(data, error)) {
    cache_note = "stored";
  } else {
    std::cerr << "qchaos: cache store skipped: " << error << '\n';
    cache_note = "store-failed";
  }
}

std::vector<double> spectrum_eigenvalues(const SpectrumHandle& handle) {
  size_t dim = 0;
  check(qbx_spectrum_dim(handle.ptr, &dim), "reading dimension");
  std::vector<double> values(dim);
  check(qbx_spectrum_eigenvalues(handle.ptr, values.data(), dim),
        "reading eigenvalues");
  return values;
}

std::vector<int32_t> basis_pairs(int32_t n_max) {
  size_t count = 0;
  check(qbx_basis_states(n_max, nullptr, 0, &count), "sizing basis");
  std::vector<int32_t> pairs(2 * count);
  check(qbx_basis_states(n_max, pairs.data(), count, &count), "listing basis");
  return pairs;
}

const char* event_kind_name(int32_t kind) {
  switch (kind) {
    case QBX_EVENT_WALL_LEFT: return "wall-left";
    case QBX_EVENT_CONTACT: return "contact";
    case QBX_EVENT_WALL_RIGHT: return "wall-right";
  }
  return "unknown";
}

/* ---------------- subcommand implementations ---------------- */

struct SpectrumArgs {
  int32_t n_max = 0;
  double eps = 0.0;
  int32_t threads = 0;
  bool use_cache = false;
  IoOptions io;
};

void run_spectrum(const SpectrumArgs& args) {
  SpectrumHandle handle;
  std::string note;
  acquire_spectrum(args.n_max, args.eps, args.use_cache, args.threads, handle, note);
  const auto values = spectrum_eigenvalues(handle);
  Table table({"index", "energy"});
  for (std::size_t i = 0; i < values.size(); ++i)
    table.add_row({static_cast<long long>(i), values[i]});
  table.set_meta("n_max", static_cast<long long>(args.n_max));
  table.set_meta("eps", args.eps);
  table.set_meta("dim", static_cast<long long>(values.size()));
  table.set_meta("cache", note);
  args.io.write(table);
}

void run_ipr_map(const SpectrumArgs& args) {
  SpectrumHandle handle;
  std::string note;
  acquire_spectrum(args.n_max, args.eps, args.use_cache, args.threads, handle, note);
  const auto values = spectrum_eigenvalues(handle);
  std::vector<double> participation(values.size());
  check(qbx_spectrum_participation(handle.ptr, participation.data(),
                                   participation.size()),
        "computing participation numbers");
  Table table({"index", "energy", "participation"});
  for (std::size_t i = 0; i < values.size(); ++i)
    table.add_row({static_cast<long long>(i), values[i], participation[i]});
  table.set_meta("n_max", static_cast<long long>(args.n_max));
  table.set_meta("eps", args.eps);
  table.set_meta("cache", note);
  args.io.write(table);
}

struct OverlapArgs {
  SpectrumArgs spectrum;
  std::string anchor;
};

void run_overlap_map(const OverlapArgs& args) {
  const auto anchor = parse_list(args.anchor, 2, "--anchor");
  const auto n1 = static_cast<int32_t>(anchor[0]);
  const auto n2 = static_cast<int32_t>(anchor[1]);
  SpectrumHandle handle;
  std::string note;
  acquire_spectrum(args.spectrum.n_max, args.spectrum.eps, args.spectrum.use_cache,
                   args.spectrum.threads, handle, note);
  size_t dim = 0;
  check(qbx_spectrum_dim(handle.ptr, &dim), "reading dimension");
  size_t column = 0;
  double max_weight = 0.0;
  std::vector<double> weights(dim);
  check(qbx_spectrum_overlap_map(handle.ptr, n1, n2, &column, &max_weight,
                                 weights.data(), dim),
        "computing overlap map");
  const auto values = spectrum_eigenvalues(handle);
  const auto pairs = basis_pairs(args.spectrum.n_max);
  Table table({"index", "n1", "n2", "weight"});
  for (std::size_t i = 0; i < dim; ++i)
    table.add_row({static_cast<long long>(i), static_cast<long long>(pairs[2 * i]),
                   static_cast<long long>(pairs[2 * i + 1]), weights[i]});
  table.set_meta("anchor_n1", static_cast<long long>(n1));
  table.set_meta("anchor_n2", static_cast<long long>(n2));
  table.set_meta("column", static_cast<long long>(column));
  table.set_meta("energy", values[column]);
  table.set_meta("max_weight", max_weight);
  table.set_meta("cache", note);
  args.spectrum.io.write(table);
}

struct LevelStatsArgs {
  SpectrumArgs spectrum;
  std::string band;
  std::size_t min_levels = 0;
  bool list_spacings = false;
};

void run_level_stats(const LevelStatsArgs& args) {
  const auto band = parse_list(args.band, 2, "--band");
  SpectrumHandle handle;
  std::string note;
  acquire_spectrum(args.spectrum.n_max, args.spectrum.eps, args.spectrum.use_cache,
                   args.spectrum.threads, handle, note);
  const auto values = spectrum_eigenvalues(handle);
  qbx_level_stats stats{};
  check(qbx_level_statistics(values.data(), values.size(), band[0], band[1],
                             args.min_levels, &stats, nullptr, 0),
        "computing level statistics");
  Table table({"index", "spacing"});
  if (args.list_spacings && stats.count > 1) {
    std::vector<double> spacings(stats.count - 1);
    check(qbx_level_statistics(values.data(), values.size(), band[0], band[1],
                               args.min_levels, &stats, spacings.data(),
                               spacings.size()),
          "listing spacings");
    for (std::size_t i = 0; i < spacings.size(); ++i)
      table.add_row({static_cast<long long>(i), spacings[i]});
  }
  table.set_meta("n_max", static_cast<long long>(args.spectrum.n_max));
  table.set_meta("eps", args.spectrum.eps);
  table.set_meta("e_lo", stats.e_lo);
  table.set_meta("e_hi", stats.e_hi);
  table.set_meta("count", static_cast<long long>(stats.count));
  table.set_meta("mean_unfolded_spacing", stats.mean_unfolded_spacing);
  table.set_meta("ks_poisson", stats.ks_poisson);
  table.set_meta("ks_wigner", stats.ks_wigner);
  table.set_meta("closer_to",
                 std::string(stats.ks_poisson <= stats.ks_wigner ? "poisson"
                                                                 : "wigner"));
  table.set_meta("cache", note);
  args.spectrum.io.write(table);
}

struct ResonancesArgs {
  long long norm2_max = 41;
  int32_t n_max = 0;  // census mode when set
  double eps = -1.0;
  double nbar = 0.0;
  double m_max_min = 0.5;
  bool segments = false;
  IoOptions io;
};

void run_resonances(const ResonancesArgs& args) {
  if (args.n_max > 0) {
    // census of post-selected bands inside the basis square
    if (args.eps < 0.0)
      throw CliError{2, "--eps is required together with --nmax"};
    size_t count = 0;
    check(qbx_resonance_overlay(args.n_max, args.eps, args.m_max_min, nullptr, 0,
                                &count),
          "sizing overlay");
    std::vector<qbx_overlay_segment> segs(count);
    if (count > 0)
      check(qbx_resonance_overlay(args.n_max, args.eps, args.m_max_min, segs.data(),
                                  count, &count),
            "computing overlay");
    if (args.segments) {
      Table table({"p", "q", "k", "m_max", "n1_start", "n2_start", "n1_end",
                   "n2_end"});
      for (const auto& seg : segs)
        table.add_row({static_cast<long long>(seg.res.p),
                       static_cast<long long>(seg.res.q), seg.k, seg.m_max,
                       seg.n1_start, seg.n2_start, seg.n1_end, seg.n2_end});
      table.set_meta("n_max", static_cast<long long>(args.n_max));
      table.set_meta("eps", args.eps);
      table.set_meta("m_max_min", args.m_max_min);
      args.io.write(table);
      return;
    }
    Table table({"p", "q", "norm2", "k_first", "k_last", "segments"});
    std::size_t i = 0;
    while (i < segs.size()) {
      std::size_t j = i;
      while (j < segs.size() && segs[j].res.p == segs[i].res.p &&
             segs[j].res.q == segs[i].res.q)
        ++j;
      const auto& res = segs[i].res;
      table.add_row({static_cast<long long>(res.p), static_cast<long long>(res.q),
                     static_cast<long long>(res.p) * res.p +
                         static_cast<long long>(res.q) * res.q,
                     segs[i].k, segs[j - 1].k, static_cast<long long>(j - i)});
      i = j;
    }
    table.set_meta("n_max", static_cast<long long>(args.n_max));
    table.set_meta("eps", args.eps);
    table.set_meta("m_max_min", args.m_max_min);
    table.set_meta("total_segments", static_cast<long long>(segs.size()));
    args.io.write(table);
    return;
  }

  size_t count = 0;
  check(qbx_enumerate_resonances(args.norm2_max, nullptr, 0, &count),
        "sizing resonance list");
  std::vector<qbx_resonance> list(count);
  if (count > 0)
    check(qbx_enumerate_resonances(args.norm2_max, list.data(), count, &count),
          "enumerating resonances");
  const bool post = args.nbar > 0.0;
  if (post && args.eps < 0.0)
    throw CliError{2, "--eps is required together with --nbar"};
  std::vector<std::string> columns = {"p", "q", "norm2"};
  if (post) {
    columns.push_back("selected");
    columns.push_back("approx_valid");
    columns.push_back("m_max");
  }
  Table table(columns);
  for (const auto& res : list) {
    std::vector<Cell> row = {static_cast<long long>(res.p),
                             static_cast<long long>(res.q),
                             static_cast<long long>(res.p) * res.p +
                                 static_cast<long long>(res.q) * res.q};
    if (post) {
      int32_t selected = 0, approx_valid = 0;
      double m_max = 0.0;
      check(qbx_post_select(res, args.nbar, args.eps, args.m_max_min, &selected,
                            &approx_valid, &m_max),
            "post-selecting");
      row.emplace_back(static_cast<long long>(selected));
      row.emplace_back(static_cast<long long>(approx_valid));
      row.emplace_back(m_max);
    }
    table.add_row(std::move(row));
  }
  table.set_meta("norm2_max", static_cast<long long>(args.norm2_max));
  if (post) {
    table.set_meta("nbar", args.nbar);
    table.set_meta("eps", args.eps);
    table.set_meta("m_max_min", args.m_max_min);
  }
  args.io.write(table);
}

struct ThresholdsArgs {
  std::vector<double> nbar;
  double m_max_min = 0.5;
  double box_l = 1.0;
  double m0 = 1.0;
  double hbar = 1.0;
  std::string manybody;  // "n1d,mass,kb_t"
  IoOptions io;
};

void run_thresholds(const ThresholdsArgs& args) {
  Table table({"nbar", "eps_first", "eps_no_gaps_rough", "eps_no_gaps_refined",
               "dimensional_form"});
  for (const double nbar : args.nbar) {
    qbx_thresholds report{};
    check(qbx_chaos_thresholds(nbar, args.m_max_min, args.box_l, args.m0, args.hbar,
                               &report),
          "computing thresholds");
    table.add_row({nbar, report.eps_first, report.eps_no_gaps_rough,
                   report.eps_no_gaps_refined, report.dimensional_form});
  }
  table.set_meta("m_max_min", args.m_max_min);
  if (!args.manybody.empty()) {
    const auto mb = parse_list(args.manybody, 3, "--manybody");
    double threshold = 0.0;
    check(qbx_manybody_threshold(mb[0], mb[1], mb[2], args.hbar, &threshold),
          "computing the gas threshold");
    table.set_meta("manybody_threshold", threshold);
  }
  args.io.write(table);
}

struct EffectiveArgs {
  int32_t p = 0;
  int32_t q = -1;
  long long k = 0;
  std::string seed;  // "n1,n2"
  double eps = -1.0;
  int32_t m_cut = 0;
  IoOptions io;
};

void run_effective(const EffectiveArgs& args) {
  if (args.eps < 0.0) throw CliError{2, "--eps is required"};
  const qbx_resonance res{args.p, args.q};
  long long k = args.k;
  if (!args.seed.empty()) {
    const auto seed = parse_list(args.seed, 2, "--seed");
    qbx_line_info line{};
    check(qbx_line_through(static_cast<int32_t>(seed[0]),
                           static_cast<int32_t>(seed[1]), res, &line),
          "building the line through the seed state");
    k = line.k;
  } else if (k <= 0) {
    throw CliError{2, "provide --k or --seed"};
  }

  qbx_line_info line{};
  check(qbx_line_from_k(res, k, &line), "building the resonance line");
  qbx_effective_info info{};
  check(qbx_effective_from_k(res, k, &info), "reducing to the effective model");
  size_t dim = 0;
  check(qbx_effective_dim(&info, args.eps, args.m_cut, &dim),
        "sizing the effective model");
  std::vector<double> levels(dim);
  size_t bound_count = 0;
  double m_max = 0.0;
  check(qbx_effective_solve(&info, args.eps, args.m_cut, levels.data(), dim,
                            &bound_count, &m_max),
        "diagonalizing the effective model");

  Table table({"index", "energy"});
  for (std::size_t i = 0; i < levels.size(); ++i)
    table.add_row({static_cast<long long>(i), levels[i]});
  table.set_meta("p", static_cast<long long>(res.p));
  table.set_meta("q", static_cast<long long>(res.q));
  table.set_meta("k", k);
  table.set_meta("delta", info.delta);
  table.set_meta("ebar", line.ebar);
  table.set_meta("v0", info.v0);
  table.set_meta("kinetic_prefactor", info.kinetic_prefactor);
  table.set_meta("basis",
                 std::string(info.uses_sine_basis ? "sine" : "plane-wave"));
  table.set_meta("eps", args.eps);
  table.set_meta("dim", static_cast<long long>(dim));
  table.set_meta("bound_count", static_cast<long long>(bound_count));
  table.set_meta("m_max", m_max);
  args.io.write(table);
}

struct ClassicalSimArgs {
  double x1 = 0.0, x2 = 0.0, v1 = 0.0, v2 = 0.0;
  double m1 = 1.0, m2 = 1.0, box_l = 1.0;
  long long events = -1;
  double time = -1.0;
  bool no_record = false;
  bool unfold = false;
  IoOptions io;
};

void run_classical_sim(const ClassicalSimArgs& args) {
  if ((args.events < 0) == (args.time < 0.0))
    throw CliError{2, "provide exactly one of --events or --time"};
  const qbx_classical_state start{args.x1, args.x2, args.v1, args.v2,
                                  args.m1, args.m2, args.box_l, 0.0};
  TrajectoryHandle traj;
  const int32_t record = args.no_record ? 0 : 1;
  if (args.events >= 0)
    check(qbx_evolve_events(&start, static_cast<size_t>(args.events), record,
                            &traj.ptr),
          "running the event loop");
  else
    check(qbx_evolve_time(&start, args.time, record, &traj.ptr),
          "running to the requested time");

  size_t recorded = 0;
  check(qbx_trajectory_events(traj.ptr, nullptr, 0, &recorded), "sizing events");
  std::vector<qbx_classical_event> events(recorded);
  std::vector<double> unfolded(2 * recorded);
  if (recorded > 0) {
    check(qbx_trajectory_events(traj.ptr, events.data(), recorded, &recorded),
          "reading events");
    if (args.unfold)
      check(qbx_trajectory_unfolded(traj.ptr, unfolded.data(), recorded, &recorded),
            "unfolding events");
  }

  std::vector<std::string> columns = {"event", "kind", "t", "x1", "x2", "v1", "v2"};
  if (args.unfold) {
    columns.push_back("u1");
    columns.push_back("u2");
  }
  Table table(columns);
  for (std::size_t i = 0; i < events.size(); ++i) {
    std::vector<Cell> row = {static_cast<long long>(i),
                             std::string(event_kind_name(events[i].kind)),
                             events[i].t,
                             events[i].x1,
                             events[i].x2,
                             events[i].v1,
                             events[i].v2};
    if (args.unfold) {
      row.emplace_back(unfolded[2 * i]);
      row.emplace_back(unfolded[2 * i + 1]);
    }
    table.add_row(std::move(row));
  }

  qbx_classical_state final_state{};
  double drift = 0.0;
  size_t total = 0;
  check(qbx_trajectory_final(traj.ptr, &final_state), "reading the final state");
  check(qbx_trajectory_drift(traj.ptr, &drift), "reading the drift");
  check(qbx_trajectory_event_count(traj.ptr, &total), "counting events");
  table.set_meta("event_count", static_cast<long long>(total));
  table.set_meta("final_t", final_state.t);
  table.set_meta("final_x1", final_state.x1);
  table.set_meta("final_x2", final_state.x2);
  table.set_meta("final_v1", final_state.v1);
  table.set_meta("final_v2", final_state.v2);
  table.set_meta("energy_drift", drift);
  args.io.write(table);
}

struct ClassicalAvgArgs {
  int32_t p = 0;
  int32_t q = -1;
  std::string direction;  // alternative to p:q
  double offset = 0.0;
  double ebar = 0.0;
  double box_l = 1.0;
  long long mc_samples = 0;
  std::uint64_t seed = 1;
  int sweep = 0;
  IoOptions io;
};

void run_classical_avg(const ClassicalAvgArgs& args) {
  const bool by_direction = !args.direction.empty();
  double dir1 = 0.0, dir2 = 0.0;
  qbx_resonance res{args.p, args.q};
  if (by_direction) {
    const auto dir = parse_list(args.direction, 2, "--direction");
    dir1 = dir[0];
    dir2 = dir[1];
  } else if (args.p <= 0 || args.q < 0) {
    throw CliError{2, "provide --p and --q, or --direction"};
  }

  std::vector<std::string> columns = {"offset", "prob_grey"};
  if (args.mc_samples > 0) columns.push_back("prob_grey_mc");
  if (!by_direction && args.ebar > 0.0) columns.push_back("averaged_potential");
  Table table(columns);

  std::vector<double> offsets;
  if (args.sweep > 0) {
    // one transverse period of the pattern
    const double s = by_direction ? dir1 * dir1 + dir2 * dir2
                                  : static_cast<double>(res.p) * res.p +
                                        static_cast<double>(res.q) * res.q;
    const double period = 2.0 * args.box_l / std::sqrt(s);
    for (int i = 0; i < args.sweep; ++i)
      offsets.push_back(period * static_cast<double>(i) /
                        static_cast<double>(args.sweep));
  } else {
    offsets.push_back(args.offset);
  }

  for (const double offset : offsets) {
    std::vector<Cell> row = {offset};
    double prob = 0.0;
    if (by_direction) {
      // integer components go through the exact reduced form
      if (dir1 == std::floor(dir1) && dir2 == std::floor(dir2))
        check(qbx_prob_grey_direction(static_cast<int64_t>(dir1),
                                      static_cast<int64_t>(dir2), offset,
                                      args.box_l, &prob),
              "evaluating the direction law");
      else if (args.mc_samples <= 0)
        throw CliError{2, "non-integer directions need --mc samples"};
      if (dir1 == std::floor(dir1) && dir2 == std::floor(dir2))
        row.emplace_back(prob);
      else
        row.emplace_back(std::string("n/a"));
    } else {
      check(qbx_prob_grey(res, offset, args.box_l, &prob),
            "evaluating the sawtooth law");
      row.emplace_back(prob);
    }
    if (args.mc_samples > 0) {
      double mc = 0.0;
      const double d1 = by_direction ? dir1 : static_cast<double>(res.q);
      const double d2 = by_direction ? dir2 : static_cast<double>(res.p);
      check(qbx_prob_grey_mc(d1, d2, offset, static_cast<size_t>(args.mc_samples),
                             args.seed, args.box_l, &mc),
            "sampling the line");
      row.emplace_back(mc);
    }
    if (!by_direction && args.ebar > 0.0) {
      double vbar = 0.0;
      check(qbx_averaged_potential(res, offset, args.ebar, args.box_l, &vbar),
            "averaging the coupling");
      row.emplace_back(vbar);
    }
    table.add_row(std::move(row));
  }
  if (!by_direction) {
    table.set_meta("p", static_cast<long long>(res.p));
    table.set_meta("q", static_cast<long long>(res.q));
  }
  if (args.mc_samples > 0) {
    table.set_meta("mc_samples", args.mc_samples);
    table.set_meta("seed", static_cast<long long>(args.seed));
  }
  args.io.write(table);
}

struct CoverageArgs {
  std::vector<double> eps;
  std::string mode = "quantum";
  double nbar = 0.0;
  double m_max_min = 0.5;
  int32_t n_angles = 64;
  IoOptions io;
};

void run_coverage(const CoverageArgs& args) {
  const bool quantum = args.mode == "quantum";
  if (quantum && args.nbar <= 0.0)
    throw CliError{2, "--nbar is required in quantum mode"};
  Table table({"eps", "fraction", "norm2_cap", "n_angles"});
  for (const double eps : args.eps) {
    qbx_coverage report{};
    if (quantum)
      check(qbx_coverage_scan_quantum(eps, args.nbar, args.m_max_min, args.n_angles,
                                      &report),
            "scanning direction coverage");
    else
      check(qbx_coverage_scan_classical(eps, args.n_angles, &report),
            "scanning direction coverage");
    table.add_row({eps, report.fraction, report.norm2_cap,
                   static_cast<long long>(report.n_angles)});
  }
  table.set_meta("mode", args.mode);
  if (quantum) {
    table.set_meta("nbar", args.nbar);
    table.set_meta("m_max_min", args.m_max_min);
  }
  args.io.write(table);
}

struct ReproduceArgs {
  bool full = false;
  bool use_cache = false;
  int32_t threads = 0;
  IoOptions io;
};

// One pass over the headline quantities: thresholds, the resonance census,
// direction coverage, and the spacing-statistics crossover.
void run_reproduce(const ReproduceArgs& args) {
  Table table({"section", "quantity", "value"});
  auto row = [&table](const char* section, const char* quantity, Cell value) {
    table.add_row({std::string(section), std::string(quantity), std::move(value)});
  };

  qbx_thresholds th{};
  check(qbx_chaos_thresholds(44.5, 0.5, 1.0, 1.0, 1.0, &th), "thresholds");
  row("thresholds", "nbar", 44.5);
  row("thresholds", "eps_first", th.eps_first);
  row("thresholds", "eps_no_gaps_rough", th.eps_no_gaps_rough);
  row("thresholds", "eps_no_gaps_refined", th.eps_no_gaps_refined);

  for (const double eps : {0.006, 0.02}) {
    size_t count = 0;
    check(qbx_resonance_overlay(100, eps, 0.5, nullptr, 0, &count), "overlay");
    std::vector<qbx_overlay_segment> segs(count);
    check(qbx_resonance_overlay(100, eps, 0.5, segs.data(), count, &count),
          "overlay");
    std::string bands;
    long long band_count = 0;
    for (std::size_t i = 0; i < segs.size();) {
      std::size_t j = i;
      while (j < segs.size() && segs[j].res.p == segs[i].res.p &&
             segs[j].res.q == segs[i].res.q)
        ++j;
      if (!bands.empty()) bands += ' ';
      bands += std::to_string(segs[i].res.p) + ":" + std::to_string(segs[i].res.q);
      ++band_count;
      i = j;
    }
    const std::string section = "census-eps-" + qchaos::format_double(eps);
    row(section.c_str(), "bands", bands);
    row(section.c_str(), "band_count", band_count);
    row(section.c_str(), "segments", static_cast<long long>(count));
  }

  qbx_coverage cov{};
  check(qbx_coverage_scan_quantum(0.006, 44.5, 0.5, 64, &cov), "coverage");
  row("coverage", "quantum_fraction_eps_0.006", cov.fraction);
  check(qbx_coverage_scan_quantum(0.02, 44.5, 0.5, 64, &cov), "coverage");
  row("coverage", "quantum_fraction_eps_0.02", cov.fraction);
  check(qbx_coverage_scan_classical(0.05, 64, &cov), "coverage");
  row("coverage", "classical_fraction_eps_0.05", cov.fraction);

  double prob = 0.0;
  check(qbx_prob_grey(qbx_resonance{2, 1}, 0.0, 1.0, &prob), "sawtooth law");
  row("averaging", "prob_grey_2_1_on_node", prob);

  // spacing-statistics crossover on a moderate basis
  const int32_t n_max = args.full ? 100 : 50;
  const double e_lo = args.full ? 1376.41 : 625.0;
  const double e_hi = args.full ? 2704.0 : 1225.0;
  const double eps_chaotic = args.full ? 0.06 : 0.10;
  for (const double eps : {0.006, eps_chaotic}) {
    SpectrumHandle handle;
    std::string note;
    acquire_spectrum(n_max, eps, args.use_cache, args.threads, handle, note);
    const auto values = spectrum_eigenvalues(handle);
    qbx_level_stats stats{};
    check(qbx_level_statistics(values.data(), values.size(), e_lo, e_hi, 0, &stats,
                               nullptr, 0),
          "level statistics");
    const std::string section = "spacings-eps-" + qchaos::format_double(eps);
    row(section.c_str(), "n_max", static_cast<long long>(n_max));
    row(section.c_str(), "count", static_cast<long long>(stats.count));
    row(section.c_str(), "ks_poisson", stats.ks_poisson);
    row(section.c_str(), "ks_wigner", stats.ks_wigner);
    row(section.c_str(), "closer_to",
        std::string(stats.ks_poisson <= stats.ks_wigner ? "poisson" : "wigner"));
  }
  args.io.write(table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Resonance structure, spectral statistics, and classical dynamics of two "
      "hard-core particles in a box with a mass defect"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qbx_version()));
  app.set_config("--config", "", "Read options from a TOML/INI file");

  SpectrumArgs spectrum_args;
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "Diagonalize the pair Hamiltonian");
  spectrum_cmd->add_option("--nmax", spectrum_args.n_max, "Basis cutoff")
      ->required();
  spectrum_cmd->add_option("--eps", spectrum_args.eps, "Mass defect")->required();
  spectrum_cmd->add_option("--threads", spectrum_args.threads,
                           "Assembly threads (0 = all)");
  spectrum_cmd->add_flag("--cache", spectrum_args.use_cache,
                         "Reuse cached diagonalizations");
  add_io_options(spectrum_cmd, spectrum_args.io);
  spectrum_cmd->callback([&] { run_spectrum(spectrum_args); });

  SpectrumArgs ipr_args;
  auto* ipr_cmd = app.add_subcommand(
      "ipr-map", "Participation number of every eigenstate");
  ipr_cmd->add_option("--nmax", ipr_args.n_max, "Basis cutoff")->required();
  ipr_cmd->add_option("--eps", ipr_args.eps, "Mass defect")->required();
  ipr_cmd->add_option("--threads", ipr_args.threads, "Assembly threads (0 = all)");
  ipr_cmd->add_flag("--cache", ipr_args.use_cache, "Reuse cached diagonalizations");
  add_io_options(ipr_cmd, ipr_args.io);
  ipr_cmd->callback([&] { run_ipr_map(ipr_args); });

  OverlapArgs overlap_args;
  auto* overlap_cmd = app.add_subcommand(
      "overlap-map", "Eigenstate weights over the mode-number grid");
  overlap_cmd->add_option("--nmax", overlap_args.spectrum.n_max, "Basis cutoff")
      ->required();
  overlap_cmd->add_option("--eps", overlap_args.spectrum.eps, "Mass defect")
      ->required();
  overlap_cmd
      ->add_option("--anchor", overlap_args.anchor,
                   "Unperturbed anchor state n1,n2")
      ->required();
  overlap_cmd->add_option("--threads", overlap_args.spectrum.threads,
                          "Assembly threads (0 = all)");
  overlap_cmd->add_flag("--cache", overlap_args.spectrum.use_cache,
                        "Reuse cached diagonalizations");
  add_io_options(overlap_cmd, overlap_args.spectrum.io);
  overlap_cmd->callback([&] { run_overlap_map(overlap_args); });

  LevelStatsArgs level_args;
  auto* level_cmd = app.add_subcommand(
      "level-stats", "Nearest-neighbor spacing statistics in an energy band");
  level_cmd->add_option("--nmax", level_args.spectrum.n_max, "Basis cutoff")
      ->required();
  level_cmd->add_option("--eps", level_args.spectrum.eps, "Mass defect")
      ->required();
  level_cmd->add_option("--band", level_args.band, "Energy band lo,hi")
      ->required();
  level_cmd->add_option("--min-levels", level_args.min_levels,
                        "Minimum band population (0 = default)");
  level_cmd->add_flag("--spacings", level_args.list_spacings,
                      "List the unfolded spacings");
  level_cmd->add_option("--threads", level_args.spectrum.threads,
                        "Assembly threads (0 = all)");
  level_cmd->add_flag("--cache", level_args.spectrum.use_cache,
                      "Reuse cached diagonalizations");
  add_io_options(level_cmd, level_args.spectrum.io);
  level_cmd->callback([&] { run_level_stats(level_args); });

  ResonancesArgs resonances_args;
  auto* resonances_cmd = app.add_subcommand(
      "resonances",
      "Enumerate resonances, or census the post-selected bands with --nmax");
  resonances_cmd->add_option("--norm2-max", resonances_args.norm2_max,
                             "Largest p^2 + q^2 to enumerate");
  resonances_cmd->add_option("--nmax", resonances_args.n_max,
                             "Basis cutoff (band census mode)");
  resonances_cmd->add_option("--eps", resonances_args.eps, "Mass defect");
  resonances_cmd->add_option("--nbar", resonances_args.nbar,
                             "Post-select at this mean radius");
  resonances_cmd->add_option("--mmaxmin", resonances_args.m_max_min,
                             "Post-selection half-width floor");
  resonances_cmd->add_flag("--segments", resonances_args.segments,
                           "List every band stroke instead of the census");
  add_io_options(resonances_cmd, resonances_args.io);
  resonances_cmd->callback([&] { run_resonances(resonances_args); });

  ThresholdsArgs thresholds_args;
  auto* thresholds_cmd =
      app.add_subcommand("thresholds", "Chaos-onset defect scales");
  thresholds_cmd->add_option("--nbar", thresholds_args.nbar, "Mean radius values")
      ->required();
  thresholds_cmd->add_option("--mmaxmin", thresholds_args.m_max_min,
                             "Post-selection half-width floor");
  thresholds_cmd->add_option("--box-l", thresholds_args.box_l, "Box length");
  thresholds_cmd->add_option("--m0", thresholds_args.m0, "Harmonic mean mass");
  thresholds_cmd->add_option("--hbar", thresholds_args.hbar, "Planck constant");
  thresholds_cmd->add_option("--manybody", thresholds_args.manybody,
                             "Gas threshold inputs n1d,mass,kb_t");
  add_io_options(thresholds_cmd, thresholds_args.io);
  thresholds_cmd->callback([&] { run_thresholds(thresholds_args); });

  EffectiveArgs effective_args;
  auto* effective_cmd = app.add_subcommand(
      "effective", "One-degree-of-freedom reduction of a resonance line");
  effective_cmd->add_option("--p", effective_args.p, "Resonance numerator")
      ->required();
  effective_cmd->add_option("--q", effective_args.q, "Resonance denominator")
      ->required();
  effective_cmd->add_option("--k", effective_args.k, "Conserved combination");
  effective_cmd->add_option("--seed", effective_args.seed,
                            "Seed state n1,n2 fixing the line");
  effective_cmd->add_option("--eps", effective_args.eps, "Mass defect");
  effective_cmd->add_option("--mcut", effective_args.m_cut,
                            "Truncation (0 = automatic)");
  add_io_options(effective_cmd, effective_args.io);
  effective_cmd->callback([&] { run_effective(effective_args); });

  ClassicalSimArgs sim_args;
  auto* sim_cmd = app.add_subcommand(
      "classical-sim", "Event-driven dynamics of the classical pair");
  sim_cmd->add_option("--x1", sim_args.x1, "Initial position of particle 1")
      ->required();
  sim_cmd->add_option("--x2", sim_args.x2, "Initial position of particle 2")
      ->required();
  sim_cmd->add_option("--v1", sim_args.v1, "Initial velocity of particle 1")
      ->required();
  sim_cmd->add_option("--v2", sim_args.v2, "Initial velocity of particle 2")
      ->required();
  sim_cmd->add_option("--m1", sim_args.m1, "Mass of particle 1");
  sim_cmd->add_option("--m2", sim_args.m2, "Mass of particle 2");
  sim_cmd->add_option("--box-l", sim_args.box_l, "Box length");
  sim_cmd->add_option("--events", sim_args.events, "Run this many events");
  sim_cmd->add_option("--time", sim_args.time, "Run to this time");
  sim_cmd->add_flag("--no-record", sim_args.no_record,
                    "Keep only the final state");
  sim_cmd->add_flag("--unfold", sim_args.unfold,
                    "Add straightened coordinates u1,u2");
  add_io_options(sim_cmd, sim_args.io);
  sim_cmd->callback([&] { run_classical_sim(sim_args); });

  ClassicalAvgArgs avg_args;
  auto* avg_cmd = app.add_subcommand(
      "classical-avg", "Outer-particle probability and averaged coupling");
  avg_cmd->add_option("--p", avg_args.p, "Resonance numerator");
  avg_cmd->add_option("--q", avg_args.q, "Resonance denominator");
  avg_cmd->add_option("--direction", avg_args.direction,
                      "Direction components dir1,dir2 instead of p:q");
  avg_cmd->add_option("--offset", avg_args.offset, "Transverse line offset");
  avg_cmd->add_option("--ebar", avg_args.ebar,
                      "Ray energy scale for the averaged coupling");
  avg_cmd->add_option("--box-l", avg_args.box_l, "Box length");
  avg_cmd->add_option("--mc", avg_args.mc_samples,
                      "Add a Monte Carlo column with this many samples");
  avg_cmd->add_option("--seed", avg_args.seed, "Monte Carlo seed");
  avg_cmd->add_option("--sweep", avg_args.sweep,
                      "Sample this many offsets over one period");
  add_io_options(avg_cmd, avg_args.io);
  avg_cmd->callback([&] { run_classical_avg(avg_args); });

  CoverageArgs coverage_args;
  auto* coverage_cmd = app.add_subcommand(
      "coverage", "Share of direction space covered by resonance stripes");
  coverage_cmd->add_option("--eps", coverage_args.eps, "Mass defect values")
      ->required();
  coverage_cmd->add_option("--mode", coverage_args.mode, "quantum or classical")
      ->check(CLI::IsMember({"quantum", "classical"}))
      ->capture_default_str();
  coverage_cmd->add_option("--nbar", coverage_args.nbar,
                           "Mean radius (quantum mode)");
  coverage_cmd->add_option("--mmaxmin", coverage_args.m_max_min,
                           "Post-selection half-width floor");
  coverage_cmd->add_option("--angles", coverage_args.n_angles,
                           "Probe angles in the open wedge");
  add_io_options(coverage_cmd, coverage_args.io);
  coverage_cmd->callback([&] { run_coverage(coverage_args); });

  ReproduceArgs reproduce_args;
  auto* reproduce_cmd = app.add_subcommand(
      "reproduce", "Recompute the headline quantities in one pass");
  reproduce_cmd->add_flag("--full", reproduce_args.full,
                          "Use the full basis for the spacing crossover (slow)");
  reproduce_cmd->add_flag("--cache", reproduce_args.use_cache,
                          "Reuse cached diagonalizations");
  reproduce_cmd->add_option("--threads", reproduce_args.threads,
                            "Assembly threads (0 = all)");
  add_io_options(reproduce_cmd, reproduce_args.io);
  reproduce_cmd->callback([&] { run_reproduce(reproduce_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::cerr << "qchaos: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "qchaos: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

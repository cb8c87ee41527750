#pragma once

// Parameter sweeps, robustness scans and the resonance search.

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hyperpol/config_io.hpp"
#include "hyperpol/magic_catalog.hpp"

namespace hyperpol {

enum class SweepTarget { stable_polarization, rate, series };

struct SweepAxis {
  std::string name;  // omega, a_perp, a_z, tau, t_s, t_w, t_c, n_p, n_r, tau_pi
  std::vector<double> values;

  static SweepAxis linspace(std::string name, double start, double stop, int count);
};

struct SweepSpec {
  SweepTarget target = SweepTarget::stable_polarization;
  std::vector<SweepAxis> axes;  // one or two
  RunConfig base;
  Engine engine = Engine::exact;
};

struct ResultRow {
  std::vector<std::string> coords;
  std::string engine;
  double p_s = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::string status;  // ok | failed | invalid
};

struct ResultTable {
  nlohmann::json header;
  std::vector<std::string> columns;  // coordinate column names
  std::vector<ResultRow> rows;

  // '#'-prefixed single-line JSON header, then the column line and one line per row.
  std::string to_csv() const;
};

// Point outputs of one engine for one configuration.
struct PointOutcome {
  double p_s = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::string status = "ok";
};

PointOutcome evaluate_exact(const SystemParams& sys, const SequenceParams& seq, SweepTarget target,
                            const RunConfig& run);
PointOutcome evaluate_analytic(const SystemParams& sys, const SequenceParams& seq, SweepTarget target,
                               const RunConfig& run);

// Exact measured rate: steady polarization from the direct fixed-point solve, then the
// cycle count to reach 1 - 1/e of it from the maximally mixed state, timed with the
// actual cycle. Zero when |P_s| <= 1e-6.
double exact_rate(const SystemParams& sys, const SequenceParams& seq);

// Reads {"target", "engine", "axes": [{name, start, stop, count} | {name, values}], "base": {...}}.
// Axis values for times accept the same notation as configuration times.
SweepSpec parse_sweep_spec(const nlohmann::json& j);

// Row-major over the axes (last axis fastest); 'both' emits exact then analytic per point.
ResultTable run_sweep(const SweepSpec& spec, int jobs = 1);

struct RobustnessCase {
  MagicRow row;
  int n_r = 1;
};

// For each case and pulse duration: corrected tau, finite timeline, |P_s| and gamma.
ResultTable robustness_scan(const SystemParams& sys, const std::vector<RobustnessCase>& cases,
                            const std::vector<double>& tau_pi_axis, int jobs = 1,
                            PulsePlacement placement = PulsePlacement::centered);

class NoResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TauSearchResult {
  double tau = 0.0;
  double gamma = 0.0;
  double tau_center = 0.0;  // corrected starting point
};

// Maximizes the exact measured rate over a grid of spacing grid_step within
// +-search_halfwidth of the corrected tau, ties to the smaller tau, then refines with a
// golden-section pass to +-grid_step / 10. seq.tau holds the ideal resonant interval.
TauSearchResult find_tau_res(const SystemParams& sys, const SequenceParams& seq, double tau_pi,
                             double search_halfwidth, double grid_step);

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace hyperpol

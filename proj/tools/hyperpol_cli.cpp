// Command-line front end: single runs, the magic table, sweeps and scans.
//
// Exit codes: 0 success, 2 configuration error, 3 convergence failure.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperpol/analytic.hpp"
#include "hyperpol/config_io.hpp"
#include "hyperpol/exact_engine.hpp"
#include "hyperpol/magic_catalog.hpp"
#include "hyperpol/sweep.hpp"

namespace {

using nlohmann::json;
using namespace hyperpol;

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

struct Common {
  std::string config;
  std::string out = "-";
  std::string engine = "both";
  int jobs = 1;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json exact_summary(const RunConfig& c) {
  const Timeline t = render_unit(c.sys, c.seq);
  const KrausPair k = kraus(propagate(c.sys, t));
  const SteadyState ss = steady_state(k, c.tolerance, initial_state(c.initial));
  json j = {{"P_s", ss.p_s}, {"lambda", ss.lambda_est}, {"iterations", ss.iterations}};
  if (std::abs(ss.p_s) > 1e-6) {
    const double n = cycles_to_threshold(k, ss.p_s, kMaxSteadyIterations);
    j["cycles_to_threshold"] = n;
    j["gamma"] = 1.0 / (std::max(1.0, n) * t.actual_cycle());
  } else {
    j["gamma"] = 0.0;
  }
  j["cycle_time"] = t.actual_cycle();
  return j;
}

int run_simulate(const Common& o) {
  const RunConfig c = load_run_config(o.config);
  const Engine e = parse_engine(o.engine);
  std::vector<double> exact;
  std::vector<double> approx;
  if (e != Engine::analytic) {
    const KrausPair k = kraus(propagate(c.sys, render_unit(c.sys, c.seq)));
    exact = simulate(k, initial_state(c.initial), c.cycles).values;
  }
  if (e != Engine::exact) {
    const auto a = analytic::summarize(c.sys, c.seq);
    approx = analytic::polarization_series(a.p_s, a.lambda, c.cycles);
  }
  std::ostringstream os;
  json header = {{"command", "simulate"}, {"engine", to_string(e)}, {"config", to_json(c)}};
  os << '#' << header.dump() << '\n' << "N";
  if (!exact.empty()) os << ",P_exact";
  if (!approx.empty()) os << ",P_analytic";
  os << '\n';
  for (int n = 0; n < c.cycles; ++n) {
    os << n + 1;
    if (!exact.empty()) os << ',' << num(exact[static_cast<std::size_t>(n)]);
    if (!approx.empty()) os << ',' << num(approx[static_cast<std::size_t>(n)]);
    os << '\n';
  }
  write_output(o.out, os.str());
  return 0;
}

int run_steady(const Common& o) {
  const RunConfig c = load_run_config(o.config);
  const Engine e = parse_engine(o.engine);
  json j = {{"config", to_json(c)}};
  if (e != Engine::exact) j["analytic"] = to_json(analytic::summarize(c.sys, c.seq));
  if (e != Engine::analytic) j["exact"] = exact_summary(c);
  write_output(o.out, j.dump(2) + "\n");
  return 0;
}

int run_magic_table(const std::string& out, const std::string& format, int max_np, bool long_tau) {
  MagicOptions opts;
  opts.long_tau_np2 = long_tau;
  const auto rows = magic_catalog(max_np, opts);
  if (format == "csv") write_output(out, catalog_csv(rows));
  else if (format == "json") write_output(out, catalog_json(rows));
  else throw ConfigError("format must be csv or json");
  return 0;
}

int run_sweep_cmd(const Common& o, bool engine_given) {
  SweepSpec spec = parse_sweep_spec(load_json(o.config));
  if (engine_given) spec.engine = parse_engine(o.engine);
  if (o.jobs < 1) throw ConfigError("--jobs must be >= 1");
  write_output(o.out, run_sweep(spec, o.jobs).to_csv());
  return 0;
}

int run_find_tau(const Common& o, const std::string& tau_pi_text, const std::string& half_text,
                 const std::string& step_text) {
  const RunConfig c = load_run_config(o.config);
  const double w = c.sys.omega;
  const double tau_pi = parse_time(json(tau_pi_text), w);
  const double half = parse_time(json(half_text), w);
  const double step = parse_time(json(step_text), w);
  if (!(step > 0.0)) throw ConfigError("--step must be positive");
  TauSearchResult r;
  try {
    r = find_tau_res(c.sys, c.seq, tau_pi, half, step);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double unit = std::numbers::pi / w;
  json j = {{"config", to_json(c)},
            {"tau_pi", tau_pi},
            {"tau_center", r.tau_center},
            {"tau_res", r.tau},
            {"tau_res_pi_over_omega", r.tau / unit},
            {"gamma", r.gamma}};
  write_output(o.out, j.dump(2) + "\n");
  return 0;
}

int run_robustness(const Common& o) {
  const json j = load_json(o.config);
  if (!j.is_object()) throw ConfigError("robustness config must be an object");
  const SystemParams sys = parse_system(j.value("system", json::object()));
  std::vector<RobustnessCase> cases;
  if (!j.contains("cases") || !j.at("cases").is_array() || j.at("cases").empty())
    throw ConfigError("robustness config needs a non-empty 'cases' array");
  for (const json& cj : j.at("cases")) {
    if (!cj.is_object() || !cj.contains("magic")) throw ConfigError("each case needs a 'magic' block");
    const int n_r = cj.value("n_r", 1);
    if (n_r < 1) throw ConfigError("n_r must be >= 1");
    cases.push_back({parse_magic(cj.at("magic")), n_r});
  }
  std::vector<double> taus;
  const json t = j.value("tau_pi", json());
  if (t.is_array()) {
    for (const json& v : t) taus.push_back(parse_time(v, sys.omega));
  } else if (t.is_object()) {
    const int count = t.value("count", 0);
    const double a = parse_time(t.at("start"), sys.omega);
    const double b = parse_time(t.at("stop"), sys.omega);
    taus = SweepAxis::linspace("tau_pi", a, b, count).values;
  } else {
    throw ConfigError("robustness config needs 'tau_pi' as a list or {start, stop, count}");
  }
  const std::string placement = j.value("placement", std::string("centered"));
  if (placement != "centered" && placement != "appended") throw ConfigError("placement must be centered or appended");
  if (o.jobs < 1) throw ConfigError("--jobs must be >= 1");
  const auto table = robustness_scan(sys, cases, taus, o.jobs,
                                     placement == "centered" ? PulsePlacement::centered : PulsePlacement::appended);
  write_output(o.out, table.to_csv());
  return 0;
}

void add_common(CLI::App* sub, Common& o, bool with_engine, bool with_jobs) {
  sub->add_option("--config", o.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output path ('-' for stdout)");
  if (with_engine) {
    sub->add_option("--engine", o.engine, "exact, analytic or both")
        ->check(CLI::IsMember({"exact", "analytic", "both"}));
  }
  if (with_jobs) sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nuclear spin hyperpolarization sequences: simulation, magic timings and sweeps"};
  app.require_subcommand(1);

  Common sim, steady, sweep, tau, rob;
  auto* c_sim = app.add_subcommand("simulate", "polarization series for one configuration (CSV)");
  add_common(c_sim, sim, true, false);
  auto* c_steady = app.add_subcommand("steady", "steady polarization, lambda and rate (JSON)");
  add_common(c_steady, steady, true, false);

  std::string table_out = "-";
  std::string table_format = "csv";
  int table_np = 8;
  bool long_tau = false;
  auto* c_table = app.add_subcommand("magic-table", "magic timing catalog");
  c_table->add_option("--out", table_out, "output path ('-' for stdout)");
  c_table->add_option("--format", table_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c_table->add_option("--max-np", table_np, "largest pulse number")->check(CLI::PositiveNumber);
  c_table->add_flag("--long-tau-np2", long_tau, "method I, N_p = 2 at tau = 8/3 pi/omega");

  auto* c_sweep = app.add_subcommand("sweep", "parameter sweep from a JSON spec (CSV)");
  add_common(c_sweep, sweep, true, true);

  std::string tau_pi = "0";
  std::string half = "0.1 pi/omega";
  std::string step = "0.005 pi/omega";
  auto* c_tau = app.add_subcommand("find-tau-res", "search the rate-maximizing tau for finite pulses");
  add_common(c_tau, tau, false, false);
  c_tau->add_option("--tau-pi", tau_pi, "pi-pulse duration, e.g. '0.2 pi/omega'");
  c_tau->add_option("--halfwidth", half, "search half-width");
  c_tau->add_option("--step", step, "grid step");

  auto* c_rob = app.add_subcommand("robustness", "finite-pulse robustness scan (CSV)");
  add_common(c_rob, rob, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*c_sim) return run_simulate(sim);
    if (*c_steady) return run_steady(steady);
    if (*c_table) return run_magic_table(table_out, table_format, table_np, long_tau);
    if (*c_sweep) return run_sweep_cmd(sweep, c_sweep->count("--engine") > 0);
    if (*c_tau) return run_find_tau(tau, tau_pi, half, step);
    if (*c_rob) return run_robustness(rob);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const BelowThresholdError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const NoResonanceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  }
  return 0;
}

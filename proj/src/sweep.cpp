#include "hyperpol/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hyperpol {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string target_name(SweepTarget t) {
  switch (t) {
    case SweepTarget::stable_polarization: return "stable_polarization";
    case SweepTarget::rate: return "rate";
    case SweepTarget::series: return "series";
  }
  return "?";
}

SweepTarget parse_target(const std::string& s) {
  if (s == "stable_polarization") return SweepTarget::stable_polarization;
  if (s == "rate") return SweepTarget::rate;
  if (s == "series") return SweepTarget::series;
  throw ConfigError("target must be stable_polarization, rate or series (got '" + s + "')");
}

bool is_time_axis(const std::string& name) {
  return name == "tau" || name == "t_s" || name == "t_w" || name == "t_c" || name == "tau_pi";
}

bool known_axis(const std::string& name) {
  return is_time_axis(name) || name == "omega" || name == "a_perp" || name == "a_z" || name == "n_p" ||
         name == "n_r";
}

void apply_axis(const std::string& name, double v, SystemParams& sys, SequenceParams& seq) {
  if (name == "omega") sys.omega = v;
  else if (name == "a_perp") sys.a_perp = v;
  else if (name == "a_z") sys.a_z = v;
  else if (name == "tau") seq.tau = v;
  else if (name == "t_s") seq.t_s = v;
  else if (name == "t_w") seq.t_w = v;
  else if (name == "t_c") seq.t_c = v;
  else if (name == "n_p") seq.n_p = static_cast<int>(std::lround(v));
  else if (name == "n_r") seq.n_r = static_cast<int>(std::lround(v));
  else if (name == "tau_pi") {
    const PulsePlacement placement = seq.pulse.placement;
    seq.pulse = v > 0.0 ? PulseModel::finite(v, placement) : PulseModel::ideal();
    seq.pulse.placement = placement;
  } else {
    throw ConfigError("unknown sweep axis '" + name + "'");
  }
}

template <class Fn>
PointOutcome guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument&) {
    return {kNaN, kNaN, kNaN, "invalid"};
  } catch (const std::exception&) {
    return {kNaN, kNaN, kNaN, "failed"};
  }
}

bool invalid(const SystemParams& sys, const SequenceParams& seq) {
  return !validate(sys).empty() || !validate(seq).empty();
}

}  // namespace

SweepAxis SweepAxis::linspace(std::string name, double start, double stop, int count) {
  if (count < 2) throw ConfigError("axis '" + name + "' needs count >= 2");
  SweepAxis a{std::move(name), {}};
  a.values.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) a.values.push_back(start + (stop - start) * i / (count - 1));
  return a;
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  os << '#' << header.dump() << '\n';
  for (const auto& c : columns) os << c << ',';
  os << "engine,P_s,lambda,gamma,status\n";
  for (const ResultRow& r : rows) {
    for (const auto& c : r.coords) os << c << ',';
    os << r.engine << ',' << fmt(r.p_s) << ',' << fmt(r.lambda) << ',' << fmt(r.gamma) << ',' << r.status
       << '\n';
  }
  return os.str();
}

double exact_rate(const SystemParams& sys, const SequenceParams& seq) {
  const Timeline t = render_unit(sys, seq);
  const KrausPair k = kraus(propagate(sys, t));
  const SteadyState ss = fixed_point(k);
  if (std::abs(ss.p_s) <= 1e-6) return 0.0;
  const double n = cycles_to_threshold(k, ss.p_s, kMaxSteadyIterations);
  return 1.0 / (std::max(1.0, n) * t.actual_cycle());
}

PointOutcome evaluate_exact(const SystemParams& sys, const SequenceParams& seq, SweepTarget target,
                            const RunConfig& run) {
  return guarded([&] {
    if (invalid(sys, seq)) return PointOutcome{kNaN, kNaN, kNaN, "invalid"};
    const Timeline t = render_unit(sys, seq);
    const KrausPair k = kraus(propagate(sys, t));
    const SteadyState ss = steady_state(k, run.tolerance);
    PointOutcome out{ss.p_s, ss.lambda_est, kNaN, "ok"};
    if (target != SweepTarget::stable_polarization) {
      if (std::abs(ss.p_s) <= 1e-6) {
        out.gamma = 0.0;
      } else {
        const double n = cycles_to_threshold(k, ss.p_s, kMaxSteadyIterations);
        out.gamma = 1.0 / (std::max(1.0, n) * t.actual_cycle());
      }
    }
    if (target == SweepTarget::series) {
      out.p_s = simulate(k, initial_state(run.initial), run.cycles).values.back();
    }
    return out;
  });
}

PointOutcome evaluate_analytic(const SystemParams& sys, const SequenceParams& seq, SweepTarget target,
                               const RunConfig& run) {
  return guarded([&] {
    if (invalid(sys, seq)) return PointOutcome{kNaN, kNaN, kNaN, "invalid"};
    const analytic::AnalyticSummary a = analytic::summarize(sys, seq);
    PointOutcome out{a.p_s, a.lambda, a.gamma, "ok"};
    if (target == SweepTarget::stable_polarization) out.gamma = kNaN;
    if (target == SweepTarget::series) {
      out.p_s = analytic::polarization_series(a.p_s, a.lambda, run.cycles).back();
    }
    return out;
  });
}

SweepSpec parse_sweep_spec(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "target" && k != "engine" && k != "axes" && k != "base")
      throw ConfigError("unknown key '" + k + "' in sweep spec");
  }
  SweepSpec s;
  s.base = parse_run_config(j.value("base", json::object()));
  s.target = parse_target(j.value("target", std::string("stable_polarization")));
  s.engine = parse_engine(j.value("engine", std::string("exact")));
  if (!j.contains("axes") || !j.at("axes").is_array()) throw ConfigError("sweep spec needs an 'axes' array");
  const json& axes = j.at("axes");
  if (axes.empty() || axes.size() > 2) throw ConfigError("a sweep takes one or two axes");
  const double w = s.base.sys.omega;
  for (const json& a : axes) {
    if (!a.is_object() || !a.contains("name")) throw ConfigError("each axis needs a name");
    const std::string name = a.at("name").get<std::string>();
    if (!known_axis(name)) throw ConfigError("unknown sweep axis '" + name + "'");
    auto value = [&](const json& v) { return is_time_axis(name) ? parse_time(v, w) : v.get<double>(); };
    SweepAxis axis;
    try {
      if (a.contains("values")) {
        axis.name = name;
        for (const json& v : a.at("values")) axis.values.push_back(value(v));
        if (axis.values.size() < 2) throw ConfigError("axis '" + name + "' needs at least 2 values");
      } else {
        if (!a.contains("start") || !a.contains("stop") || !a.contains("count"))
          throw ConfigError("axis '" + name + "' needs start, stop and count");
        axis = SweepAxis::linspace(name, value(a.at("start")), value(a.at("stop")), a.at("count").get<int>());
      }
    } catch (const json::exception& e) {
      throw ConfigError("axis '" + name + "': " + e.what());
    }
    s.axes.push_back(std::move(axis));
  }
  if (s.axes.size() == 2 && s.axes[0].name == s.axes[1].name) throw ConfigError("duplicate sweep axis");
  return s;
}

ResultTable run_sweep(const SweepSpec& spec, int jobs) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw ConfigError("a sweep takes one or two axes");
  for (const auto& a : spec.axes) {
    if (!known_axis(a.name)) throw ConfigError("unknown sweep axis '" + a.name + "'");
    if (a.values.size() < 2) throw ConfigError("axis '" + a.name + "' needs at least 2 values");
  }
  std::vector<std::string> engines;
  if (spec.engine != Engine::analytic) engines.push_back("exact");
  if (spec.engine != Engine::exact) engines.push_back("analytic");

  const std::size_t n0 = spec.axes[0].values.size();
  const std::size_t n1 = spec.axes.size() == 2 ? spec.axes[1].values.size() : 1;
  const std::size_t points = n0 * n1;

  ResultTable table;
  json axes = json::array();
  for (const auto& a : spec.axes) {
    table.columns.push_back(a.name);
    axes.push_back({{"name", a.name}, {"values", a.values}});
  }
  table.header = {{"target", target_name(spec.target)},
                  {"engine", to_string(spec.engine)},
                  {"axes", axes},
                  {"base", to_json(spec.base)}};
  table.rows.resize(points * engines.size());

  parallel_for(points, jobs, [&](std::size_t p) {
    const std::size_t i0 = p / n1;
    const std::size_t i1 = p % n1;
    SystemParams sys = spec.base.sys;
    SequenceParams seq = spec.base.seq;
    std::vector<std::string> coords{fmt(spec.axes[0].values[i0])};
    apply_axis(spec.axes[0].name, spec.axes[0].values[i0], sys, seq);
    if (spec.axes.size() == 2) {
      coords.push_back(fmt(spec.axes[1].values[i1]));
      apply_axis(spec.axes[1].name, spec.axes[1].values[i1], sys, seq);
    }
    for (std::size_t e = 0; e < engines.size(); ++e) {
      const PointOutcome o = engines[e] == "exact" ? evaluate_exact(sys, seq, spec.target, spec.base)
                                                   : evaluate_analytic(sys, seq, spec.target, spec.base);
      table.rows[p * engines.size() + e] = {coords, engines[e], o.p_s, o.lambda, o.gamma, o.status};
    }
  });
  return table;
}

ResultTable robustness_scan(const SystemParams& sys, const std::vector<RobustnessCase>& cases,
                            const std::vector<double>& tau_pi_axis, int jobs, PulsePlacement placement) {
  ResultTable table;
  table.columns = {"config", "n_r", "tau_pi", "tau"};
  json cj = json::array();
  for (const auto& c : cases) cj.push_back({{"row", c.row.label()}, {"n_r", c.n_r}});
  table.header = {{"target", "robustness"},
                  {"system", to_json(sys)},
                  {"cases", cj},
                  {"tau_pi", tau_pi_axis},
                  {"placement", placement == PulsePlacement::centered ? "centered" : "appended"}};
  const std::size_t m = tau_pi_axis.size();
  table.rows.resize(cases.size() * m);
  RunConfig run;
  parallel_for(cases.size() * m, jobs, [&](std::size_t idx) {
    const RobustnessCase& c = cases[idx / m];
    const double tau_pi = tau_pi_axis[idx % m];
    ResultRow& row = table.rows[idx];
    std::string label = "method " + to_string(c.row.method) + (c.row.sign > 0 ? " +1" : " -1") +
                        " N_p=" + std::to_string(c.row.n_p);
    row.coords = {label, std::to_string(c.n_r), fmt(tau_pi), ""};
    row.engine = "exact";
    SequenceParams seq = c.row.to_sequence(sys.omega, c.n_r);
    try {
      seq.tau = finite_pulse_tau(seq.tau, tau_pi, seq.n_p);
    } catch (const std::invalid_argument&) {
      row.p_s = row.lambda = row.gamma = kNaN;
      row.status = "invalid";
      return;
    }
    row.coords[3] = fmt(seq.tau);
    if (tau_pi > 0.0) seq.pulse = PulseModel::finite(tau_pi, placement);
    const PointOutcome o = evaluate_exact(sys, seq, SweepTarget::rate, run);
    row.p_s = std::abs(o.p_s);
    row.lambda = o.lambda;
    row.gamma = o.gamma;
    row.status = o.status;
  });
  return table;
}

}  // namespace hyperpol

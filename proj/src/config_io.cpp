#include "hyperpol/config_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace hyperpol {

namespace {

using nlohmann::json;

constexpr const char* kPiUnit = "pi/omega";

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_scalar_text(const std::string& text) {
  if (text.find('/') != std::string::npos) return Rational::parse(text).to_double();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument(text);
  return v;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

}  // namespace

Engine parse_engine(const std::string& name) {
  if (name == "exact") return Engine::exact;
  if (name == "analytic") return Engine::analytic;
  if (name == "both") return Engine::both;
  throw ConfigError("engine must be exact, analytic or both (got '" + name + "')");
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::exact: return "exact";
    case Engine::analytic: return "analytic";
    case Engine::both: return "both";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "I" || name == "1") return Method::I;
  if (name == "II" || name == "2") return Method::II;
  throw ConfigError("method must be I or II (got '" + name + "')");
}

double parse_time(const json& value, double omega) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) throw ConfigError("time must be a number or a string");
  std::string text = trim(value.get<std::string>());
  double scale = 1.0;
  const auto unit = text.find(kPiUnit);
  if (unit != std::string::npos) {
    if (trim(text.substr(unit + std::string(kPiUnit).size())) != "")
      throw ConfigError("trailing text after pi/omega in '" + text + "'");
    scale = std::numbers::pi / omega;
    text = trim(text.substr(0, unit));
  }
  try {
    return parse_scalar_text(text) * scale;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse time '" + value.get<std::string>() + "'");
  }
}

SystemParams parse_system(const json& j) {
  if (!j.is_object()) throw ConfigError("'system' must be an object");
  reject_unknown(j, {"omega", "a_perp", "a_z"}, "system");
  SystemParams s;
  s.omega = get_or(j, "omega", s.omega);
  s.a_perp = get_or(j, "a_perp", s.a_perp);
  s.a_z = get_or(j, "a_z", s.a_z);
  if (auto errs = validate(s); !errs.empty()) throw ConfigError("system: " + errs.front());
  return s;
}

PulseModel parse_pulse(const json& j, double omega) {
  if (j.is_string()) {
    if (j.get<std::string>() == "ideal") return PulseModel::ideal();
    throw ConfigError("pulse must be \"ideal\" or an object");
  }
  if (!j.is_object()) throw ConfigError("pulse must be \"ideal\" or an object");
  reject_unknown(j, {"kind", "tau_pi", "placement"}, "pulse");
  const std::string kind = get_or<std::string>(j, "kind", "finite");
  if (kind == "ideal") return PulseModel::ideal();
  if (kind != "finite") throw ConfigError("pulse kind must be ideal or finite");
  if (!j.contains("tau_pi")) throw ConfigError("finite pulse needs tau_pi");
  const std::string placement = get_or<std::string>(j, "placement", "centered");
  PulsePlacement pl;
  if (placement == "centered") pl = PulsePlacement::centered;
  else if (placement == "appended") pl = PulsePlacement::appended;
  else throw ConfigError("placement must be centered or appended");
  return PulseModel::finite(parse_time(j.at("tau_pi"), omega), pl);
}

MagicRow parse_magic(const json& j) {
  if (!j.is_object()) throw ConfigError("'magic' must be an object");
  reject_unknown(j, {"method", "sign", "n_p", "long_tau_np2"}, "magic");
  const json m = j.value("method", json("I"));
  const Method method = parse_method(m.is_string() ? m.get<std::string>() : std::to_string(m.get<int>()));
  MagicOptions opts;
  opts.long_tau_np2 = get_or(j, "long_tau_np2", false);
  try {
    return magic_params(method, get_or(j, "sign", 1), get_or(j, "n_p", 1), opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("magic: ") + e.what());
  }
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  reject_unknown(j, {"system", "sequence", "cycles", "tolerance", "initial"}, "configuration");
  RunConfig c;
  c.sys = parse_system(j.value("system", json::object()));
  const json seq = j.value("sequence", json::object());
  if (!seq.is_object()) throw ConfigError("'sequence' must be an object");
  reject_unknown(seq, {"magic", "n_p", "tau", "t_s", "t_w", "t_c", "n_r", "pulse"}, "sequence");
  const double w = c.sys.omega;
  c.seq.n_r = get_or(seq, "n_r", 1);
  if (seq.contains("magic")) c.seq = parse_magic(seq.at("magic")).to_sequence(w, c.seq.n_r);
  c.seq.n_p = get_or(seq, "n_p", c.seq.n_p);
  if (seq.contains("tau")) c.seq.tau = parse_time(seq.at("tau"), w);
  if (seq.contains("t_s")) c.seq.t_s = parse_time(seq.at("t_s"), w);
  if (seq.contains("t_w")) c.seq.t_w = parse_time(seq.at("t_w"), w);
  if (seq.contains("t_c")) c.seq.t_c = parse_time(seq.at("t_c"), w);
  if (seq.contains("pulse")) c.seq.pulse = parse_pulse(seq.at("pulse"), w);
  if (auto errs = validate(c.seq); !errs.empty()) throw ConfigError("sequence: " + errs.front());
  c.cycles = get_or(j, "cycles", c.cycles);
  if (c.cycles < 1) throw ConfigError("cycles must be >= 1");
  c.tolerance = get_or(j, "tolerance", c.tolerance);
  if (!(c.tolerance > 0.0 && c.tolerance <= 1e-6)) throw ConfigError("tolerance must lie in (0, 1e-6]");
  c.initial = get_or<std::string>(j, "initial", c.initial);
  initial_state(c.initial);
  return c;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(load_json(path)); }

DensityMatrix2 initial_state(const std::string& name) {
  if (name == "mixed") return DensityMatrix2::maximally_mixed();
  if (name == "up") return DensityMatrix2::spin_up();
  if (name == "down") return DensityMatrix2::spin_down();
  throw ConfigError("initial state must be mixed, up or down");
}

json to_json(const SystemParams& s) { return {{"omega", s.omega}, {"a_perp", s.a_perp}, {"a_z", s.a_z}}; }

json to_json(const PulseModel& p) {
  if (!p.is_finite()) return "ideal";
  return {{"kind", "finite"},
          {"tau_pi", p.tau_pi},
          {"placement", p.placement == PulsePlacement::centered ? "centered" : "appended"}};
}

json to_json(const SequenceParams& s) {
  return {{"n_p", s.n_p}, {"tau", s.tau}, {"t_s", s.t_s}, {"t_w", s.t_w},
          {"t_c", s.t_c}, {"n_r", s.n_r}, {"pulse", to_json(s.pulse)}};
}

json to_json(const analytic::AnalyticSummary& a) {
  return {{"F", a.f_value}, {"dirichlet", a.dirichlet}, {"alpha", a.alpha}, {"theta", a.theta},
          {"P_s", a.p_s},   {"lambda", a.lambda},       {"gamma", a.gamma}};
}

json to_json(const RunConfig& c) {
  return {{"system", to_json(c.sys)},
          {"sequence", to_json(c.seq)},
          {"cycles", c.cycles},
          {"tolerance", c.tolerance},
          {"initial", c.initial}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace hyperpol

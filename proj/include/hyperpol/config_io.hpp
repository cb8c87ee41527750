#pragma once

// JSON configuration and result serialization.
//
// Times may be given as plain numbers (absolute units) or as strings in units of
// pi/omega, e.g. "3/2 pi/omega" or "1.5 pi/omega".

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hyperpol/analytic.hpp"
#include "hyperpol/exact_engine.hpp"
#include "hyperpol/magic_catalog.hpp"
#include "hyperpol/sequence.hpp"

namespace hyperpol {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Engine { exact, analytic, both };

struct RunConfig {
  SystemParams sys;
  SequenceParams seq;
  int cycles = 200;           // length of a simulated series
  double tolerance = 1e-10;   // steady-state tolerance
  std::string initial = "mixed";  // mixed | up | down
};

Engine parse_engine(const std::string& name);
std::string to_string(Engine e);
Method parse_method(const std::string& name);

// Reads a time value, resolving "pi/omega" units with the given omega.
double parse_time(const nlohmann::json& value, double omega);

SystemParams parse_system(const nlohmann::json& j);
PulseModel parse_pulse(const nlohmann::json& j, double omega);
// Reads a "magic" block {method, sign, n_p[, long_tau_np2]} into a catalog row.
MagicRow parse_magic(const nlohmann::json& j);

// Accepts {"system": {...}, "sequence": {...}} where the sequence may start from a
// "magic" block and override individual fields. Validates the result.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json load_json(const std::string& path);

DensityMatrix2 initial_state(const std::string& name);

nlohmann::json to_json(const SystemParams& s);
nlohmann::json to_json(const PulseModel& p);
nlohmann::json to_json(const SequenceParams& s);
nlohmann::json to_json(const analytic::AnalyticSummary& a);
nlohmann::json to_json(const RunConfig& c);

// Writes text to path, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace hyperpol

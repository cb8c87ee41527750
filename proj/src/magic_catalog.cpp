#include "hyperpol/magic_catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hyperpol {

namespace {

// 0 for odd N_p, 1 for even N_p: the ((-1)^N_p + 1) / 2 offset of phi in units of pi.
Rational parity_offset(int n_p) { return Rational(n_p % 2 == 0 ? 1 : 0); }

// phi / pi demanded by the sign: 1/2 for positive, 3/2 for negative polarization.
Rational target_phase(int sign) { return sign > 0 ? Rational(1, 2) : Rational(3, 2); }

void check_inputs(int sign, int n_p) {
  if (n_p < 1) throw std::invalid_argument("n_p must be >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

MagicRow method_one(int sign, int n_p, const MagicOptions& opts) {
  MagicRow r;
  r.method = Method::I;
  r.sign = sign;
  r.n_p = n_p;
  const auto taus = resonant_tau(n_p);
  r.tau = (n_p == 2 && opts.long_tau_np2) ? taus.back() : taus.front();
  const Rational np_tau = Rational(n_p) * r.tau;
  // phi = c - (t_S + N_p tau) = target (mod 2)
  r.t_s = (parity_offset(n_p) - np_tau - target_phase(sign)).mod(2);
  // Phi_1 = t_S + t_W + 2 N_p tau = 1 (mod 2)
  r.t_w = (Rational(1) - r.t_s - Rational(2) * np_tau).mod(2);
  // Phi = 2 t_S + t_W + 4 N_p tau + t_C = 0 (mod 2)
  r.t_c = (-(Rational(2) * r.t_s + r.t_w + Rational(4) * np_tau)).mod(2);
  return r;
}

MagicRow method_two(int sign, int n_p) {
  MagicRow r;
  r.method = Method::II;
  r.sign = sign;
  r.n_p = n_p;
  const Rational base = parity_offset(n_p) - target_phase(sign);
  bool have = false;
  Rational best_gap;
  for (const Rational& res : resonant_tau(n_p)) {
    // N_p tau = base + 2k, with k the integer that lands closest to the resonance.
    const Rational x = (Rational(n_p) * res - base) / Rational(2);
    const Rational tau = (base + Rational(2 * x.round_half_even())) / Rational(n_p);
    const Rational gap = tau > res ? tau - res : res - tau;
    if (!have || gap < best_gap) {
      r.tau = tau;
      best_gap = gap;
      have = true;
    }
  }
  return r;
}

}  // namespace

Rational MagicRow::repetition_time() const {
  return Rational(2) * t_s + t_w + Rational(4 * n_p) * tau + t_c;
}

std::vector<Rational> MagicRow::sideband_fractions(int k_max) const {
  std::vector<Rational> out;
  for (int k = 1; k <= k_max; ++k) {
    out.push_back(-Rational(k) * sideband_step);
    out.push_back(Rational(k) * sideband_step);
  }
  return out;
}

SequenceParams MagicRow::to_sequence(double omega, int n_r, const PulseModel& pulse) const {
  const double unit = std::numbers::pi / omega;
  SequenceParams s;
  s.n_p = n_p;
  s.tau = tau.to_double() * unit;
  s.t_s = t_s.to_double() * unit;
  s.t_w = t_w.to_double() * unit;
  s.t_c = t_c.to_double() * unit;
  s.n_r = n_r;
  s.pulse = pulse;
  return s;
}

std::string MagicRow::label() const {
  return "method " + to_string(method) + ", " + (sign > 0 ? "+1" : "-1") + ", N_p=" + std::to_string(n_p);
}

std::vector<Rational> resonant_tau(int n_p) {
  if (n_p < 1) throw std::invalid_argument("n_p must be >= 1");
  if (n_p == 1) return {Rational(2)};
  if (n_p == 2) return {Rational(4, 3), Rational(8, 3)};
  return {Rational(1)};
}

MagicRow magic_params(Method method, int sign, int n_p, const MagicOptions& opts) {
  check_inputs(sign, n_p);
  MagicRow r = method == Method::I ? method_one(sign, n_p, opts) : method_two(sign, n_p);
  r.gamma_window = Rational(4) / r.repetition_time();
  r.sideband_step = r.gamma_window;
  return r;
}

std::vector<MagicRow> magic_catalog(int max_n_p, const MagicOptions& opts) {
  if (max_n_p < 1) throw std::invalid_argument("max_n_p must be >= 1");
  std::vector<MagicRow> rows;
  for (Method m : {Method::I, Method::II}) {
    for (int n_p = 1; n_p <= max_n_p; ++n_p) {
      for (int sign : {1, -1}) rows.push_back(magic_params(m, sign, n_p, opts));
    }
  }
  return rows;
}

double finite_pulse_tau(double tau_ideal, double tau_pi, int n_p) {
  if (n_p < 1) throw std::invalid_argument("n_p must be >= 1");
  if (tau_pi < 0.0) throw std::invalid_argument("tau_pi must be >= 0");
  const double t = tau_ideal - tau_pi / n_p;
  if (!(t > 0.0)) throw std::invalid_argument("pulse longer than interval: corrected tau is not positive");
  return t;
}

WindowInfo window_and_sidebands(const MagicRow& row, int n_r, double omega, int k_max) {
  if (n_r < 1) throw std::invalid_argument("n_r must be >= 1");
  const SequenceParams seq = row.to_sequence(omega, n_r);
  WindowInfo w;
  w.delta_omega = 4.0 / (n_r * seq.nominal_repetition_time());
  for (const Rational& f : row.sideband_fractions(k_max)) w.sideband_offsets.push_back(f.to_double() * omega);
  return w;
}

std::string to_string(Method m) { return m == Method::I ? "I" : "II"; }

std::string pi_over_omega(const Rational& r) { return r.to_string() + " pi/omega"; }

std::string catalog_csv(const std::vector<MagicRow>& rows) {
  std::ostringstream os;
  os << "method,sign,n_p,tau,t_s,t_w,t_c,gamma_window,sideband_step\n";
  for (const MagicRow& r : rows) {
    os << to_string(r.method) << ',' << (r.sign > 0 ? "+1" : "-1") << ',' << r.n_p << ','
       << pi_over_omega(r.tau) << ',' << pi_over_omega(r.t_s) << ',' << pi_over_omega(r.t_w) << ','
       << pi_over_omega(r.t_c) << ',' << r.gamma_window.to_string() << ',' << r.sideband_step.to_string()
       << '\n';
  }
  return os.str();
}

std::string catalog_json(const std::vector<MagicRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MagicRow& r : rows) {
    arr.push_back({{"method", to_string(r.method)},
                   {"sign", r.sign},
                   {"n_p", r.n_p},
                   {"tau", pi_over_omega(r.tau)},
                   {"t_s", pi_over_omega(r.t_s)},
                   {"t_w", pi_over_omega(r.t_w)},
                   {"t_c", pi_over_omega(r.t_c)},
                   {"gamma_window", r.gamma_window.to_string()},
                   {"sideband_step", r.sideband_step.to_string()}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace hyperpol

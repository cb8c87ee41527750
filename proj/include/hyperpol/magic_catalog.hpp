#pragma once

// Magic timing recipes: waits and pulse interval that give perfect polarization
// of a chosen sign with maximal transfer strength. All times are rationals in
// units of pi/omega.

#include <string>
#include <vector>

#include "hyperpol/rational.hpp"
#include "hyperpol/sequence.hpp"

namespace hyperpol {

enum class Method { I, II };

struct MagicOptions {
  // Method I with N_p = 2: use the second resonance tau = 8/3 instead of 4/3.
  bool long_tau_np2 = false;
};

struct MagicRow {
  Method method = Method::I;
  int sign = 1;
  int n_p = 1;
  Rational tau;
  Rational t_s;
  Rational t_w;
  Rational t_c;
  // Polarization window in units of omega / (N_R pi); equals 4 / T with T in pi/omega.
  Rational gamma_window;
  // Sidebands sit at +-k * sideband_step (fractions of omega).
  Rational sideband_step;

  // Repetition time 2 t_S + t_W + 4 N_p tau + t_C, in pi/omega.
  Rational repetition_time() const;
  std::vector<Rational> sideband_fractions(int k_max) const;
  // Concrete parameters for a given Larmor frequency and repetition count.
  SequenceParams to_sequence(double omega, int n_r, const PulseModel& pulse = PulseModel::ideal()) const;
  std::string label() const;
};

// Resonant DD intervals in pi/omega: {2}, {4/3, 8/3}, {1} for N_p >= 3.
std::vector<Rational> resonant_tau(int n_p);

// Throws std::invalid_argument for n_p < 1 or sign not +-1.
MagicRow magic_params(Method method, int sign, int n_p, const MagicOptions& opts = {});

// Every (method, sign, N_p) for N_p = 1..max_n_p, Method I first.
std::vector<MagicRow> magic_catalog(int max_n_p, const MagicOptions& opts = {});

// tau_ideal - tau_pi / n_p; throws std::invalid_argument when the result is not positive.
double finite_pulse_tau(double tau_ideal, double tau_pi, int n_p);

struct WindowInfo {
  double delta_omega = 0.0;               // 4 / (N_R T)
  std::vector<double> sideband_offsets;   // +-k * step * omega, k = 1..k_max
};

// T uses the row's t_C only when n_r > 1, matching the rendered protocol.
WindowInfo window_and_sidebands(const MagicRow& row, int n_r, double omega, int k_max = 2);

std::string to_string(Method m);
// Renders "p/q pi/omega".
std::string pi_over_omega(const Rational& r);

std::string catalog_csv(const std::vector<MagicRow>& rows);
std::string catalog_json(const std::vector<MagicRow>& rows);

}  // namespace hyperpol

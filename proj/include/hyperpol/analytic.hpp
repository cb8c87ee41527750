#pragma once

// Closed-form predictions of the first-order average-Hamiltonian treatment.

#include <utility>
#include <vector>

#include "hyperpol/exact_engine.hpp"
#include "hyperpol/sequence.hpp"

namespace hyperpol::analytic {

// Distance from a removable singularity below which the analytic limit is used.
inline constexpr double kSingularSwitch = 1e-6;

struct PhaseBundle {
  double phi0 = 0.0;     // omega (t_S + N_p tau)
  double phi1 = 0.0;     // omega (t_S + t_W + 2 N_p tau)
  double phi_big = 0.0;  // omega T
  double phi = 0.0;      // polarization phase, in [0, 2 pi)
  double theta = 0.0;    // phi / 2 + pi / 4
};

struct AnalyticSummary {
  double f_value = 0.0;
  double dirichlet = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double p_s = 0.0;
  double lambda = 1.0;
  double gamma = 0.0;
};

// DD modulation function, +1 or -1 on [0, N_p tau]. Throws std::invalid_argument outside.
int f_dd(double t, int n_p, double tau);

struct DdIntegrals {
  double cos_int = 0.0;  // int_0^{N_p tau} f_dd(t) cos(omega t) dt
  double sin_int = 0.0;  // int_0^{N_p tau} f_dd(t) sin(omega t) dt
};

// Closed forms for even and odd N_p; singular points use the filter-function limit.
DdIntegrals dd_integral_closed(double omega, int n_p, double tau);
// Adaptive Simpson quadrature over each constant piece of f_dd.
DdIntegrals dd_integral_quadrature(double omega, int n_p, double tau, double tol = 1e-13);

// DD filter function F(omega, N_p, tau) with the removable singularity at cos(omega tau/2) = 0.
double filter_f(double omega, int n_p, double tau);
// The removable-singularity limit of F, valid at cos(omega tau / 2) = 0.
double filter_f_limit(double omega, int n_p, double tau);

// sin(n_r x / 2) / sin(x / 2), with the limit n_r cos(n_r k pi) / cos(k pi) at x = 2 k pi.
double dirichlet(int n_r, double x);

PhaseBundle phases(const SystemParams& sys, const SequenceParams& seq);

double alpha(const SystemParams& sys, const SequenceParams& seq);

// Approximate Kraus pair; the z-phase uses the total precession n_r * phi_big.
KrausPair kraus_approx(double alpha, double theta, double phi_big, int n_r);

double stable_polarization(double alpha, double theta);
double lambda_analytic(double alpha, double theta);

// P^(N) = P_s (1 - lambda^(N-1)), N = 1..n.
std::vector<double> polarization_series(double p_s, double lambda, int n);

// min{-ln lambda, 1} / (N_R T); zero when lambda == 1.
double gamma_analytic(double lambda, int n_r, double t_repetition);

// 4 N_R N_p A_perp / omega
double alpha_max(int n_r, int n_p, double a_perp, double omega);
// (A_perp / pi) min{-ln cos(alpha_max/2) / (alpha_max/2), 1/alpha_max}
double gamma_opt_approx(double alpha_max, double a_perp);
// A_perp^2 / (pi omega)
double gamma0(double a_perp, double omega);

// Everything above for one configuration.
AnalyticSummary summarize(const SystemParams& sys, const SequenceParams& seq);

}  // namespace hyperpol::analytic

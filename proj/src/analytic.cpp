#include "hyperpol/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace hyperpol::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_two_pi(double x) {
  const double two_pi = 2.0 * kPi;
  double r = x - two_pi * std::floor(x / two_pi);
  if (r >= two_pi) r -= two_pi;
  return r;
}

double sq(double x) { return x * x; }

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

int f_dd(double t, int n_p, double tau) {
  const double end = n_p * tau;
  if (n_p < 1 || tau < 0.0 || t < 0.0 || t > end) throw std::invalid_argument("f_dd: t outside [0, N_p tau]");
  if (t < 0.5 * tau) return 1;
  if (t >= (n_p - 0.5) * tau) return n_p % 2 == 0 ? 1 : -1;
  // (2k-1) tau/2 <= t < (2k+1) tau/2
  const int k = static_cast<int>(std::floor(t / tau + 0.5));
  return k % 2 == 0 ? 1 : -1;
}

double filter_f_limit(double omega, int n_p, double tau) {
  const double half = omega * tau / 2.0;
  const double x = n_p * half;
  const double s = std::sin(omega * tau / 4.0);
  const double base = 4.0 * n_p * sq(s) / (omega * std::sin(half));
  return n_p % 2 == 0 ? base * std::cos(x) : base * std::sin(x);
}

double filter_f(double omega, int n_p, double tau) {
  if (tau == 0.0) return 0.0;
  const double c = std::cos(omega * tau / 2.0);
  if (std::abs(c) < kSingularSwitch) return filter_f_limit(omega, n_p, tau);
  const double x = n_p * omega * tau / 2.0;
  const double s2 = sq(std::sin(omega * tau / 4.0));
  if (n_p % 2 == 0) return -4.0 * std::sin(x) * s2 / (omega * c);
  return 4.0 * std::cos(x) * s2 / (omega * c);
}

DdIntegrals dd_integral_closed(double omega, int n_p, double tau) {
  const double f = filter_f(omega, n_p, tau);
  const double x = n_p * omega * tau / 2.0;
  if (n_p % 2 == 0) return {f * std::cos(x), f * std::sin(x)};
  return {f * std::sin(x), -f * std::cos(x)};
}

DdIntegrals dd_integral_quadrature(double omega, int n_p, double tau, double tol) {
  DdIntegrals out;
  if (tau <= 0.0) return out;
  // Pieces of constant sign: [0, tau/2), [(2k-1)tau/2, (2k+1)tau/2), [(N_p - 1/2) tau, N_p tau].
  std::vector<double> edges{0.0};
  for (int k = 1; k <= n_p; ++k) edges.push_back((2 * k - 1) * tau / 2.0);
  edges.push_back(n_p * tau);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double a = edges[i];
    const double b = edges[i + 1];
    out.cos_int += sign * adaptive_simpson([omega](double t) { return std::cos(omega * t); }, a, b, tol);
    out.sin_int += sign * adaptive_simpson([omega](double t) { return std::sin(omega * t); }, a, b, tol);
  }
  return out;
}

double dirichlet(int n_r, double x) {
  const double s = std::sin(x / 2.0);
  if (std::abs(s) < kSingularSwitch) {
    const double k = std::round(x / (2.0 * kPi));
    return n_r * std::cos(n_r * k * kPi) / std::cos(k * kPi);
  }
  return std::sin(n_r * x / 2.0) / s;
}

PhaseBundle phases(const SystemParams& sys, const SequenceParams& seq) {
  PhaseBundle p;
  const double w = sys.omega;
  p.phi0 = w * (seq.t_s + seq.n_p * seq.tau);
  p.phi1 = w * (seq.t_s + seq.t_w + 2.0 * seq.n_p * seq.tau);
  p.phi_big = w * seq.nominal_repetition_time();
  const double offset = seq.n_p % 2 == 0 ? kPi : 0.0;
  p.phi = wrap_two_pi(offset - p.phi0);
  p.theta = p.phi / 2.0 + kPi / 4.0;
  return p;
}

double alpha(const SystemParams& sys, const SequenceParams& seq) {
  const PhaseBundle p = phases(sys, seq);
  return 2.0 * sys.a_perp * dirichlet(seq.n_r, p.phi_big) * std::sin(p.phi1 / 2.0) *
         filter_f(sys.omega, seq.n_p, seq.tau);
}

KrausPair kraus_approx(double alpha, double theta, double phi_big, int n_r) {
  const double total = n_r * phi_big;
  const double eta = alpha * std::cos(theta) / 2.0;
  const double chi = alpha * std::sin(theta) / 2.0;
  const cplx i(0.0, 1.0);
  KrausPair k;
  k.m_up(0, 0) = -std::polar(1.0, -total / 2.0) * std::cos(eta);
  k.m_up(1, 1) = -std::polar(1.0, total / 2.0) * std::cos(chi);
  k.m_down(0, 1) = -std::polar(1.0, -(theta + total / 2.0)) * std::sin(chi);
  k.m_down(1, 0) = i * std::polar(1.0, theta + total / 2.0) * std::sin(eta);
  return k;
}

double stable_polarization(double alpha, double theta) {
  const double up = sq(std::sin(0.5 * alpha * std::sin(theta)));
  const double down = sq(std::sin(0.5 * alpha * std::cos(theta)));
  const double denom = up + down;
  if (denom == 0.0) return 0.0;
  return (up - down) / denom;
}

double lambda_analytic(double alpha, double theta) {
  return 0.5 * std::abs(std::cos(alpha * std::sin(theta)) + std::cos(alpha * std::cos(theta)));
}

std::vector<double> polarization_series(double p_s, double lambda, int n) {
  if (n < 1) throw std::invalid_argument("polarization_series needs n >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  double power = 1.0;  // lambda^(N-1)
  for (int N = 1; N <= n; ++N) {
    out.push_back(p_s * (1.0 - power));
    power *= lambda;
  }
  return out;
}

double gamma_analytic(double lambda, int n_r, double t_repetition) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (lambda == 1.0) return 0.0;
  const double decay = lambda == 0.0 ? 1.0 : std::min(-std::log(lambda), 1.0);
  return decay / (n_r * t_repetition);
}

double alpha_max(int n_r, int n_p, double a_perp, double omega) { return 4.0 * n_r * n_p * a_perp / omega; }

double gamma_opt_approx(double alpha_max, double a_perp) {
  if (!(alpha_max > 0.0)) throw std::invalid_argument("alpha_max must be positive");
  const double linear = 1.0 / alpha_max;
  double log_branch = INFINITY;
  const double c = std::cos(alpha_max / 2.0);
  if (c > 0.0) log_branch = -std::log(c) / (alpha_max / 2.0);
  return a_perp / kPi * std::min(log_branch, linear);
}

double gamma0(double a_perp, double omega) { return a_perp * a_perp / (kPi * omega); }

AnalyticSummary summarize(const SystemParams& sys, const SequenceParams& seq) {
  const PhaseBundle p = phases(sys, seq);
  AnalyticSummary s;
  s.f_value = filter_f(sys.omega, seq.n_p, seq.tau);
  s.dirichlet = dirichlet(seq.n_r, p.phi_big);
  s.alpha = 2.0 * sys.a_perp * s.dirichlet * std::sin(p.phi1 / 2.0) * s.f_value;
  s.theta = p.theta;
  s.p_s = stable_polarization(s.alpha, p.theta);
  s.lambda = std::clamp(lambda_analytic(s.alpha, p.theta), 0.0, 1.0);
  s.gamma = gamma_analytic(s.lambda, seq.n_r, seq.nominal_repetition_time());
  return s;
}

}  // namespace hyperpol::analytic

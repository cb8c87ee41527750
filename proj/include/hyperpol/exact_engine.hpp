#pragma once

// Exact evolution of the electron-nuclear pair and the nuclear channel it induces
// per electron initialization.

#include <stdexcept>
#include <string>
#include <vector>

#include "hyperpol/linalg.hpp"
#include "hyperpol/sequence.hpp"

namespace hyperpol {

struct KrausPair {
  CMatrix m_up{2};    // <Up| U |Up>
  CMatrix m_down{2};  // <Down| U |Up>

  static KrausPair identity();
  // max |(M_up^dag M_up + M_down^dag M_down - I)_ij|
  double cptp_defect() const;
};

// Nuclear density matrix. Construction validates Hermiticity, unit trace and
// positivity within 1e-10.
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(const CMatrix& m);

  static DensityMatrix2 maximally_mixed();
  static DensityMatrix2 spin_up();
  static DensityMatrix2 spin_down();

  const CMatrix& matrix() const { return m_; }
  // <2 I_z> = rho_uu - rho_dd
  double polarization() const { return (m_(0, 0) - m_(1, 1)).real(); }
  double trace_defect() const { return std::abs(m_.trace() - 1.0); }
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  DensityMatrix2(const CMatrix& m, Unchecked) : m_(m) {}
  friend DensityMatrix2 apply_channel(const KrausPair&, const DensityMatrix2&);

  CMatrix m_;
};

// P^(1) is the polarization of the initial state; P^(N) follows N-1 channel applications.
struct PolarizationSeries {
  std::vector<double> values;
};

struct SteadyState {
  double p_s = 0.0;
  double lambda_est = 1.0;
  long iterations = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, long iterations, double last_distance)
      : std::runtime_error(what), iterations_(iterations), last_distance_(last_distance) {}
  long iterations() const { return iterations_; }
  double last_distance() const { return last_distance_; }

 private:
  long iterations_;
  double last_distance_;
};

class BelowThresholdError : public std::runtime_error {
 public:
  BelowThresholdError(const std::string& what, double max_fraction)
      : std::runtime_error(what), max_fraction_(max_fraction) {}
  // Largest P^(n) / P_s reached by the series.
  double max_fraction() const { return max_fraction_; }

 private:
  double max_fraction_;
};

// 4x4 Hamiltonians in the fixed basis order.
CMatrix system_hamiltonian(const SystemParams& sys);
CMatrix nuclear_zeeman(const SystemParams& sys);
// S_axis (x) I for the electron drive.
CMatrix electron_spin(Axis axis);

// Propagator of a single segment.
CMatrix segment_propagator(const SystemParams& sys, const Segment& seg);

// Ordered product of segment propagators, later segments on the left.
CMatrix propagate(const SystemParams& sys, const Timeline& t);

// Throws std::invalid_argument when u is not unitary within 1e-10.
KrausPair kraus(const CMatrix& u);

DensityMatrix2 apply_channel(const KrausPair& k, const DensityMatrix2& rho);

PolarizationSeries simulate(const KrausPair& k, const DensityMatrix2& rho0, int n);

inline constexpr long kMaxSteadyIterations = 1'000'000;

// Fixed point by channel iteration until successive states differ by less than tol
// (max-entry distance). Throws ConvergenceError after kMaxSteadyIterations.
SteadyState steady_state(const KrausPair& k, double tol,
                         const DensityMatrix2& rho0 = DensityMatrix2::maximally_mixed());

// Fixed point from the affine Bloch-vector form r' = M r + c of the channel, solved
// directly as (I - M) r = c. lambda_est is the spectral radius of M and iterations is 0.
// Throws ConvergenceError when the fixed point is not unique.
SteadyState fixed_point(const KrausPair& k);

// gamma = 1 / (N_s t_cycle), with N_s the number of channel applications needed for
// P / P_s to reach 1 - 1/e (linearly interpolated, clamped to >= 1).
double measured_rate(const PolarizationSeries& series, double p_s, double t_cycle);

// Number of channel applications (interpolated, unclamped) for the series started from
// rho0 to reach 1 - 1/e of p_s. Iterates up to max_cycles; throws BelowThresholdError.
double cycles_to_threshold(const KrausPair& k, double p_s, long max_cycles,
                           const DensityMatrix2& rho0 = DensityMatrix2::maximally_mixed());

}  // namespace hyperpol

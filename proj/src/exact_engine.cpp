#include "hyperpol/exact_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>

#include "hyperpol/kernels.hpp"

namespace hyperpol {

namespace {

constexpr double kThresholdFraction = 1.0 - 1.0 / std::numbers::e;

CMatrix embed_electron(const CMatrix& op) { return kron(op, spin::id2()); }
CMatrix embed_nuclear(const CMatrix& op) { return kron(spin::id2(), op); }

}  // namespace

KrausPair KrausPair::identity() { return {CMatrix::identity(2), CMatrix(2)}; }

double KrausPair::cptp_defect() const {
  return max_abs_diff(m_up.adjoint() * m_up + m_down.adjoint() * m_down, CMatrix::identity(2));
}

DensityMatrix2::DensityMatrix2(const CMatrix& m) : m_(m) {
  if (m.dim() != 2) throw std::invalid_argument("density matrix must be 2x2");
  if (hermiticity_defect(m) > kIdentityTolerance) throw std::invalid_argument("density matrix not Hermitian");
  if (trace_defect() > kIdentityTolerance) throw std::invalid_argument("density matrix trace != 1");
  if (min_eigenvalue() < -kIdentityTolerance) throw std::invalid_argument("density matrix not positive");
}

DensityMatrix2 DensityMatrix2::maximally_mixed() { return DensityMatrix2(CMatrix::diagonal({0.5, 0.5})); }
DensityMatrix2 DensityMatrix2::spin_up() { return DensityMatrix2(CMatrix::diagonal({1.0, 0.0})); }
DensityMatrix2 DensityMatrix2::spin_down() { return DensityMatrix2(CMatrix::diagonal({0.0, 1.0})); }

double DensityMatrix2::min_eigenvalue() const {
  const double a = m_(0, 0).real();
  const double d = m_(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(m_(0, 1)));
  return mean - half_gap;
}

CMatrix system_hamiltonian(const SystemParams& sys) {
  const CMatrix hyperfine = kron(spin::sz(), sys.a_perp * spin::sx() + sys.a_z * spin::sz());
  return nuclear_zeeman(sys) + hyperfine;
}

CMatrix nuclear_zeeman(const SystemParams& sys) { return embed_nuclear(sys.omega * spin::sz()); }

CMatrix electron_spin(Axis axis) {
  switch (axis) {
    case Axis::plus_x: return embed_electron(spin::sx());
    case Axis::minus_x: return embed_electron(spin::sx() * -1.0);
    case Axis::plus_y: return embed_electron(spin::sy());
    case Axis::minus_y: return embed_electron(spin::sy() * -1.0);
  }
  throw std::invalid_argument("unknown axis");
}

CMatrix segment_propagator(const SystemParams& sys, const Segment& seg) {
  switch (seg.kind) {
    case SegmentKind::free_hyperfine:
      return hermitian_expm(HermitianGenerator(system_hamiltonian(sys)), seg.duration);
    case SegmentKind::free_nuclear:
      return hermitian_expm(HermitianGenerator(nuclear_zeeman(sys)), seg.duration);
    case SegmentKind::pulse: {
      if (seg.duration == 0.0) {
        // Ideal rotation exp(-i angle S_axis) on the electron only.
        return hermitian_expm(HermitianGenerator(electron_spin(seg.axis)), seg.angle);
      }
      const double rabi = seg.angle / seg.duration;
      return hermitian_expm(HermitianGenerator(system_hamiltonian(sys) + rabi * electron_spin(seg.axis)),
                            seg.duration);
    }
  }
  throw std::invalid_argument("unknown segment kind");
}

CMatrix propagate(const SystemParams& sys, const Timeline& t) {
  // A cycle only has a handful of distinct segments; reuse their propagators.
  std::vector<std::pair<Segment, CMatrix>> cache;
  CMatrix u = CMatrix::identity(4);
  for (const Segment& seg : t.segments) {
    auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == seg; });
    if (it == cache.end()) {
      cache.emplace_back(seg, segment_propagator(sys, seg));
      it = std::prev(cache.end());
    }
    u = it->second * u;
  }
  return u;
}

KrausPair kraus(const CMatrix& u) {
  if (u.dim() != 4) throw std::invalid_argument("kraus expects a 4x4 propagator");
  if (unitarity_defect(u) > kIdentityTolerance) throw std::invalid_argument("propagator is not unitary");
  KrausPair k;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      k.m_up(i, j) = u(i, j);
      k.m_down(i, j) = u(2 + i, j);
    }
  }
  return k;
}

DensityMatrix2 apply_channel(const KrausPair& k, const DensityMatrix2& rho) {
  CMatrix out(2);
  kernels::active().channel2(k.m_up.entries().data(), k.m_down.entries().data(),
                             rho.matrix().entries().data(), out.entries().data());
  return DensityMatrix2(out, DensityMatrix2::Unchecked{});
}

PolarizationSeries simulate(const KrausPair& k, const DensityMatrix2& rho0, int n) {
  if (n < 1) throw std::invalid_argument("simulate needs n >= 1");
  PolarizationSeries s;
  s.values.reserve(static_cast<std::size_t>(n));
  DensityMatrix2 rho = rho0;
  for (int i = 0; i < n; ++i) {
    s.values.push_back(rho.polarization());
    if (i + 1 < n) rho = apply_channel(k, rho);
  }
  return s;
}

namespace {

// Geometric-mean contraction ratio over the usable tail of successive differences.
std::optional<double> tail_ratio(const std::deque<double>& diffs) {
  constexpr double kNoiseFloor = 1e-13;
  std::vector<double> usable;
  for (double d : diffs) {
    if (d > kNoiseFloor) usable.push_back(d);
  }
  if (usable.size() < 2) return std::nullopt;
  const double span = static_cast<double>(usable.size() - 1);
  return std::clamp(std::pow(usable.back() / usable.front(), 1.0 / span), 0.0, 1.0);
}

}  // namespace

SteadyState steady_state(const KrausPair& k, double tol, const DensityMatrix2& rho0) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("steady_state tolerance must be in (0, 1e-6]");
  constexpr std::size_t kWindow = 32;
  std::deque<double> pol_diffs;
  std::deque<double> state_diffs;
  DensityMatrix2 rho = rho0;
  double last = 0.0;
  for (long it = 1; it <= kMaxSteadyIterations; ++it) {
    DensityMatrix2 next = apply_channel(k, rho);
    last = max_abs_diff(next.matrix(), rho.matrix());
    pol_diffs.push_back(std::abs(next.polarization() - rho.polarization()));
    state_diffs.push_back(last);
    if (pol_diffs.size() > kWindow) {
      pol_diffs.pop_front();
      state_diffs.pop_front();
    }
    rho = next;
    if (last < tol) {
      SteadyState out{rho.polarization(), 1.0, it};
      if (it == 1) return out;  // the initial state is already fixed
      if (auto r = tail_ratio(pol_diffs)) {
        out.lambda_est = *r;
      } else if (auto rs = tail_ratio(state_diffs)) {
        out.lambda_est = *rs;
      } else {
        out.lambda_est = 0.0;
      }
      return out;
    }
  }
  throw ConvergenceError("steady state not reached after " + std::to_string(kMaxSteadyIterations) +
                             " iterations (last step " + std::to_string(last) + ")",
                         kMaxSteadyIterations, last);
}

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

Vec3 bloch(const CMatrix& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

// Channel applied to an arbitrary Hermitian input without the density-matrix checks.
CMatrix apply_raw(const KrausPair& k, const CMatrix& x) {
  CMatrix out(2);
  kernels::active().channel2(k.m_up.entries().data(), k.m_down.entries().data(), x.entries().data(),
                             out.entries().data());
  return out;
}

double det3(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double spectral_radius(const Mat3& m) {
  Vec3 v{0.577, 0.5, 0.645};
  double log_growth = 0.0;
  constexpr int kSteps = 512;
  for (int i = 0; i < kSteps; ++i) {
    Vec3 w{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) w[r] += m[r][c] * v[c];
    const double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    if (n == 0.0) return 0.0;
    log_growth += std::log(n);
    for (int r = 0; r < 3; ++r) v[r] = w[r] / n;
  }
  return std::clamp(std::exp(log_growth / kSteps), 0.0, 1.0);
}

}  // namespace

SteadyState fixed_point(const KrausPair& k) {
  const Vec3 c = bloch(apply_raw(k, CMatrix::diagonal({0.5, 0.5})));
  const std::array<CMatrix, 3> paulis{CMatrix(2, {0.0, 0.5, 0.5, 0.0}),
                                      CMatrix(2, {0.0, cplx(0.0, -0.5), cplx(0.0, 0.5), 0.0}),
                                      CMatrix::diagonal({0.5, -0.5})};
  Mat3 m{};
  for (int j = 0; j < 3; ++j) {
    // linear part only: the channel is linear, so the image of sigma_j / 2 carries no offset
    const Vec3 col = bloch(apply_raw(k, paulis[static_cast<std::size_t>(j)]));
    for (int i = 0; i < 3; ++i) m[i][j] = col[i];
  }
  Mat3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - m[i][j];
  const double d = det3(a);
  if (std::abs(d) < 1e-14) throw ConvergenceError("channel has no unique fixed point", 0, 0.0);
  // Cramer's rule for the z component
  Mat3 az = a;
  for (int i = 0; i < 3; ++i) az[i][2] = c[i];
  return {det3(az) / d, spectral_radius(m), 0};
}

namespace {

double interpolate_crossing(double prev_fraction, double fraction, long index) {
  // index counts channel applications at `fraction`; index - 1 at `prev_fraction`.
  const double span = fraction - prev_fraction;
  const double frac = span > 0.0 ? (kThresholdFraction - prev_fraction) / span : 1.0;
  return static_cast<double>(index - 1) + std::clamp(frac, 0.0, 1.0);
}

}  // namespace

double measured_rate(const PolarizationSeries& series, double p_s, double t_cycle) {
  if (!(std::abs(p_s) > 1e-6)) throw BelowThresholdError("steady polarization too small to define a rate", 0.0);
  if (series.values.empty()) throw BelowThresholdError("empty series", 0.0);
  double best = -INFINITY;
  double prev = series.values.front() / p_s;
  if (prev >= kThresholdFraction) return 1.0 / t_cycle;
  best = prev;
  for (std::size_t i = 1; i < series.values.size(); ++i) {
    const double f = series.values[i] / p_s;
    best = std::max(best, f);
    if (f >= kThresholdFraction) {
      const double n_s = std::max(1.0, interpolate_crossing(prev, f, static_cast<long>(i)));
      return 1.0 / (n_s * t_cycle);
    }
    prev = f;
  }
  throw BelowThresholdError("series never reaches 1 - 1/e of the steady polarization", best);
}

double cycles_to_threshold(const KrausPair& k, double p_s, long max_cycles, const DensityMatrix2& rho0) {
  if (!(std::abs(p_s) > 1e-6)) throw BelowThresholdError("steady polarization too small to define a rate", 0.0);
  DensityMatrix2 rho = rho0;
  double prev = rho.polarization() / p_s;
  if (prev >= kThresholdFraction) return 0.0;
  double best = prev;
  for (long c = 1; c <= max_cycles; ++c) {
    rho = apply_channel(k, rho);
    const double f = rho.polarization() / p_s;
    best = std::max(best, f);
    if (f >= kThresholdFraction) return interpolate_crossing(prev, f, c);
    prev = f;
  }
  throw BelowThresholdError("series never reaches 1 - 1/e of the steady polarization", best);
}

}  // namespace hyperpol

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperpol/exact_engine.hpp"
#include "../support.hpp"

using namespace hyperpol;

namespace {

constexpr double kPi = std::numbers::pi;

SequenceParams positive_np1(int n_r) {
  SequenceParams s;
  s.n_p = 1;
  s.tau = 2.0 * kPi;
  s.t_s = s.t_w = s.t_c = 1.5 * kPi;
  s.n_r = n_r;
  return s;
}

KrausPair channel(const SystemParams& sys, const SequenceParams& seq) {
  return kraus(propagate(sys, render_unit(sys, seq)));
}

}  // namespace

TEST_CASE("propagate agrees with the split-operator oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> a(0.0, 0.2);
  for (int trial = 0; trial < 10; ++trial) {
    const SystemParams sys{1.0, a(rng), a(rng)};
    auto seq = testing_support::random_sequence(rng);
    const Timeline t = render_unit(sys, seq);
    CHECK(testing_support::max_diff(propagate(sys, t), oracle::trotter_propagator(sys, t, 1)) < 1e-12);
    seq.tau = std::max(seq.tau, 0.3);
    seq.pulse = PulseModel::finite(0.2);
    const Timeline tf = render_unit(sys, seq);
    CHECK(testing_support::max_diff(propagate(sys, tf), oracle::trotter_propagator(sys, tf, 400)) < 1e-6);
  }
}

TEST_CASE("ideal pulses act on the electron only") {
  const SystemParams sys{1.0, 0.05, 0.0};
  const Segment pi_x{SegmentKind::pulse, 0.0, Axis::plus_x, kPi};
  const CMatrix u = segment_propagator(sys, pi_x);
  // exp(-i pi S_x) = -i sigma_x on the electron
  CHECK(std::abs(u(2, 0) - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(u(0, 0)) < 1e-15);
}

TEST_CASE("Kraus pairs are trace preserving") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemParams sys{1.0, 0.05, 0.01};
    const auto k = channel(sys, testing_support::random_sequence(rng));
    CHECK(k.cptp_defect() < 1e-12);
  }
  CHECK(KrausPair::identity().cptp_defect() == 0.0);
  CHECK_THROWS_AS(kraus(2.0 * CMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("zero coupling leaves the nucleus unpolarized") {
  const SystemParams sys{1.0, 0.0, 0.0};
  const auto k = channel(sys, positive_np1(1));
  const auto s = simulate(k, DensityMatrix2::maximally_mixed(), 50);
  for (double p : s.values) CHECK(std::abs(p) < 1e-14);
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix2(CMatrix::diagonal({0.7, 0.7})), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix2(CMatrix::diagonal({1.2, -0.2})), std::invalid_argument);
  CMatrix m = CMatrix::diagonal({0.5, 0.5});
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix2{m}, std::invalid_argument);
  CHECK(DensityMatrix2::spin_up().polarization() == 1.0);
  CHECK(DensityMatrix2::spin_down().min_eigenvalue() == doctest::Approx(0.0));
}

TEST_CASE("series starts at the initial state and approaches the fixed point") {
  const SystemParams sys{1.0, 0.05, 0.0};
  const auto k = channel(sys, positive_np1(1));
  const auto s = simulate(k, DensityMatrix2::maximally_mixed(), 400);
  CHECK(s.values.front() == 0.0);
  CHECK(s.values.size() == 400);
  const auto ss = steady_state(k, 1e-12);
  CHECK(ss.p_s > 0.9999);
  CHECK(std::abs(s.values.back() - ss.p_s) < 1e-6);
  // single-step contraction cos^2(alpha/2), alpha = 0.4
  CHECK(ss.lambda_est == doctest::Approx(std::pow(std::cos(0.2), 2)).epsilon(1e-3));
}

TEST_CASE("steady state of a fixed initial state") {
  const auto ss = steady_state(KrausPair::identity(), 1e-10, DensityMatrix2::spin_up());
  CHECK(ss.iterations == 1);
  CHECK(ss.lambda_est == 1.0);
  CHECK(ss.p_s == 1.0);
  CHECK_THROWS_AS(steady_state(KrausPair::identity(), 1e-3), std::invalid_argument);
}

TEST_CASE("a perfect swap reaches the fixed point in one step") {
  KrausPair k;
  k.m_up = CMatrix::diagonal({1.0, 0.0});
  k.m_down = CMatrix(2, {0.0, 1.0, 0.0, 0.0});
  const auto ss = steady_state(k, 1e-10);
  CHECK(ss.p_s == doctest::Approx(1.0));
  CHECK(ss.lambda_est == 0.0);
  const auto s = simulate(k, DensityMatrix2::maximally_mixed(), 5);
  CHECK(measured_rate(s, 1.0, 2.0) == doctest::Approx(0.5));  // clamped at one cycle
}

TEST_CASE("slow channels report a convergence failure") {
  KrausPair k;
  const double eps = 1e-4;
  k.m_up = CMatrix::diagonal({1.0, std::cos(eps)});
  k.m_down = CMatrix(2, {0.0, std::sin(eps), 0.0, 0.0});
  CHECK_THROWS_AS(steady_state(k, 1e-15), ConvergenceError);
}

TEST_CASE("measured rate interpolates the threshold crossing") {
  PolarizationSeries s{{0.0, 0.5, 0.7, 0.9}};
  // 1 - 1/e = 0.632 lies between the second and third entries
  const double frac = (1.0 - 1.0 / std::numbers::e - 0.5) / 0.2;
  CHECK(measured_rate(s, 1.0, 3.0) == doctest::Approx(1.0 / ((1.0 + frac) * 3.0)));
  CHECK_THROWS_AS(measured_rate(PolarizationSeries{{0.0, 0.1}}, 1.0, 1.0), BelowThresholdError);
  CHECK_THROWS_AS(measured_rate(s, 0.0, 1.0), BelowThresholdError);
  try {
    measured_rate(PolarizationSeries{{0.0, 0.1, 0.3}}, 1.0, 1.0);
  } catch (const BelowThresholdError& e) {
    CHECK(e.max_fraction() == doctest::Approx(0.3));
  }
}

TEST_CASE("cycles_to_threshold matches the simulated series") {
  const SystemParams sys{1.0, 0.05, 0.0};
  const auto k = channel(sys, positive_np1(1));
  const double p_s = steady_state(k, 1e-12).p_s;
  const double n = cycles_to_threshold(k, p_s, 10000);
  const auto s = simulate(k, DensityMatrix2::maximally_mixed(), 2000);
  CHECK(1.0 / std::max(1.0, n) == doctest::Approx(measured_rate(s, p_s, 1.0)).epsilon(1e-12));
}

TEST_CASE("direct fixed point matches channel iteration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> a(0.02, 0.2);
  for (int trial = 0; trial < 10; ++trial) {
    const SystemParams sys{1.0, a(rng), 0.0};
    const auto k = channel(sys, testing_support::random_sequence(rng));
    SteadyState it;
    try {
      it = steady_state(k, 1e-13);
    } catch (const ConvergenceError&) {
      continue;  // near-degenerate draw
    }
    const SteadyState fp = fixed_point(k);
    CHECK(fp.iterations == 0);
    CHECK(std::abs(fp.p_s - it.p_s) < 1e-9);
    CHECK(fp.lambda_est <= 1.0);
  }
  const auto k = channel(SystemParams{1.0, 0.05, 0.0}, positive_np1(1));
  // slowest Bloch mode is the transverse one, cos(alpha/2), not the population cos^2(alpha/2)
  CHECK(fixed_point(k).lambda_est == doctest::Approx(std::cos(0.2)).epsilon(1e-3));
  CHECK_THROWS_AS(fixed_point(KrausPair::identity()), ConvergenceError);
}

#pragma once

// Reference computations used only by the tests. They share no code with the library's
// linear algebra: 4x4 operators are plain arrays and every exponential is a closed-form
// 2x2 rotation.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "hyperpol/sequence.hpp"

namespace oracle {

using cx = std::complex<double>;
using M2 = std::array<cx, 4>;
using M4 = std::array<cx, 16>;

inline M4 mul(const M4& a, const M4& b) {
  M4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) c[i * 4 + j] += a[i * 4 + k] * b[k * 4 + j];
  return c;
}

inline M4 eye4() {
  M4 m{};
  for (int i = 0; i < 4; ++i) m[i * 5] = 1.0;
  return m;
}

// exp(-i t (b . sigma) / 2) = cos(|b|t/2) - i sin(|b|t/2) (b^ . sigma)
inline M2 rotation(double bx, double by, double bz, double t) {
  const double n = std::sqrt(bx * bx + by * by + bz * bz);
  if (n == 0.0) return {1.0, 0.0, 0.0, 1.0};
  const double c = std::cos(0.5 * n * t);
  const double s = std::sin(0.5 * n * t);
  const cx i(0.0, 1.0);
  const double x = bx / n, y = by / n, z = bz / n;
  return {c - i * s * z, -i * s * cx(x, -y), -i * s * cx(x, y), c + i * s * z};
}

// Block-diagonal operator diag(a, b) in the electron index.
inline M4 electron_blocks(const M2& up, const M2& down) {
  M4 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m[i * 4 + j] = up[i * 2 + j];
      m[(2 + i) * 4 + (2 + j)] = down[i * 2 + j];
    }
  return m;
}

// electron rotation (x) identity on the nucleus
inline M4 electron_only(const M2& r) {
  M4 m{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int n = 0; n < 2; ++n) m[(2 * a + n) * 4 + (2 * b + n)] = r[a * 2 + b];
  return m;
}

// exp(-i t H) for H = omega I_z + S_z (A_perp I_x + A_z I_z): the electron S_z = +-1/2
// selects a nuclear field (+-A_perp/2, 0, omega +- A_z/2).
inline M4 hyperfine_step(const hyperpol::SystemParams& s, double t) {
  const M2 up = rotation(0.5 * s.a_perp, 0.0, s.omega + 0.5 * s.a_z, t);
  const M2 down = rotation(-0.5 * s.a_perp, 0.0, s.omega - 0.5 * s.a_z, t);
  return electron_blocks(up, down);
}

inline M4 nuclear_step(const hyperpol::SystemParams& s, double t) {
  const M2 r = rotation(0.0, 0.0, s.omega, t);
  return electron_blocks(r, r);
}

inline M2 axis_rotation(hyperpol::Axis axis, double angle) {
  switch (axis) {
    case hyperpol::Axis::plus_x: return rotation(1.0, 0.0, 0.0, angle);
    case hyperpol::Axis::minus_x: return rotation(-1.0, 0.0, 0.0, angle);
    case hyperpol::Axis::plus_y: return rotation(0.0, 1.0, 0.0, angle);
    case hyperpol::Axis::minus_y: return rotation(0.0, -1.0, 0.0, angle);
  }
  return {1.0, 0.0, 0.0, 1.0};
}

// Strang splitting of H + Omega S_axis for driven segments, exact rotations elsewhere.
inline M4 trotter_propagator(const hyperpol::SystemParams& s, const hyperpol::Timeline& t, int steps) {
  M4 u = eye4();
  for (const auto& seg : t.segments) {
    using hyperpol::SegmentKind;
    if (seg.kind == SegmentKind::free_hyperfine) {
      u = mul(hyperfine_step(s, seg.duration), u);
    } else if (seg.kind == SegmentKind::free_nuclear) {
      u = mul(nuclear_step(s, seg.duration), u);
    } else if (seg.duration == 0.0) {
      u = mul(electron_only(axis_rotation(seg.axis, seg.angle)), u);
    } else {
      const double dt = seg.duration / steps;
      const double rabi = seg.angle / seg.duration;
      const M4 half = hyperfine_step(s, 0.5 * dt);
      const M4 drive = electron_only(axis_rotation(seg.axis, rabi * dt));
      const M4 step = mul(half, mul(drive, half));
      for (int k = 0; k < steps; ++k) u = mul(step, u);
    }
  }
  return u;
}

// Exact piecewise antiderivative of f_DD(t) e^{i omega t} over [0, N_p tau].
inline std::complex<double> dd_integral(double omega, int n_p, double tau) {
  std::complex<double> acc = 0.0;
  const cx i(0.0, 1.0);
  auto piece = [&](double a, double b, double sign) {
    acc += sign * (std::exp(i * omega * b) - std::exp(i * omega * a)) / (i * omega);
  };
  piece(0.0, 0.5 * tau, 1.0);
  for (int k = 1; k < n_p; ++k) piece((2 * k - 1) * tau / 2, (2 * k + 1) * tau / 2, k % 2 == 0 ? 1.0 : -1.0);
  piece((2 * n_p - 1) * tau / 2, n_p * tau, n_p % 2 == 0 ? 1.0 : -1.0);
  return acc;
}

}  // namespace oracle

#include "hyperpol/kernels.hpp"

namespace hyperpol::kernels::scalar {

void matmul4(const cplx* a, const cplx* b, cplx* out) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (int k = 0; k < 4; ++k) {
        const cplx x = a[4 * i + k];
        const cplx y = b[4 * k + j];
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
      }
      out[4 * i + j] = {re, im};
    }
  }
}

namespace {

// out = m rho m^dagger, accumulated.
void sandwich_add(const cplx* m, const cplx* rho, cplx* out) {
  cplx tmp[4];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) tmp[2 * i + j] = m[2 * i] * rho[j] + m[2 * i + 1] * rho[2 + j];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[2 * i + j] += tmp[2 * i] * std::conj(m[2 * j]) + tmp[2 * i + 1] * std::conj(m[2 * j + 1]);
}

}  // namespace

void channel2(const cplx* m_up, const cplx* m_down, const cplx* rho, cplx* out) {
  for (int k = 0; k < 4; ++k) out[k] = 0.0;
  sandwich_add(m_up, rho, out);
  sandwich_add(m_down, rho, out);
}

}  // namespace hyperpol::kernels::scalar

// Compiled with -mavx2 -mfma; only reached after a runtime CPUID check.
#include <immintrin.h>

#include "hyperpol/kernels.hpp"

namespace hyperpol::kernels::avx2 {

namespace {

// Two complex numbers per register: (re0, im0, re1, im1).
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// acc + s * v, where s is a broadcast complex scalar and v holds two complex numbers.
inline __m256d cmul_acc(__m256d acc, __m256d s_re, __m256d s_im, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  const __m256d prod = _mm256_fmaddsub_pd(s_re, v, _mm256_mul_pd(s_im, swapped));
  return _mm256_add_pd(acc, prod);
}

// Conjugate both lanes.
inline __m256d conj2(__m256d v) { return _mm256_xor_pd(v, _mm256_set_pd(-0.0, 0.0, -0.0, 0.0)); }

}  // namespace

void matmul4(const cplx* a, const cplx* b, cplx* out) {
  const __m256d b00 = load2(b + 0), b01 = load2(b + 2);
  const __m256d b10 = load2(b + 4), b11 = load2(b + 6);
  const __m256d b20 = load2(b + 8), b21 = load2(b + 10);
  const __m256d b30 = load2(b + 12), b31 = load2(b + 14);
  for (int i = 0; i < 4; ++i) {
    const cplx* row = a + 4 * i;
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    __m256d re = _mm256_set1_pd(row[0].real()), im = _mm256_set1_pd(row[0].imag());
    lo = cmul_acc(lo, re, im, b00);
    hi = cmul_acc(hi, re, im, b01);
    re = _mm256_set1_pd(row[1].real()), im = _mm256_set1_pd(row[1].imag());
    lo = cmul_acc(lo, re, im, b10);
    hi = cmul_acc(hi, re, im, b11);
    re = _mm256_set1_pd(row[2].real()), im = _mm256_set1_pd(row[2].imag());
    lo = cmul_acc(lo, re, im, b20);
    hi = cmul_acc(hi, re, im, b21);
    re = _mm256_set1_pd(row[3].real()), im = _mm256_set1_pd(row[3].imag());
    lo = cmul_acc(lo, re, im, b30);
    hi = cmul_acc(hi, re, im, b31);
    store2(out + 4 * i, lo);
    store2(out + 4 * i + 2, hi);
  }
}

namespace {

// m rho m^dagger for 2x2 matrices. Rows are computed as (m rho) and then multiplied by
// m^dagger, whose rows are the conjugated columns of m.
inline void sandwich(const cplx* m, __m256d rho_r0, __m256d rho_r1, __m256d& out_r0, __m256d& out_r1) {
  __m256d t0 = _mm256_setzero_pd();
  __m256d t1 = _mm256_setzero_pd();
  t0 = cmul_acc(t0, _mm256_set1_pd(m[0].real()), _mm256_set1_pd(m[0].imag()), rho_r0);
  t0 = cmul_acc(t0, _mm256_set1_pd(m[1].real()), _mm256_set1_pd(m[1].imag()), rho_r1);
  t1 = cmul_acc(t1, _mm256_set1_pd(m[2].real()), _mm256_set1_pd(m[2].imag()), rho_r0);
  t1 = cmul_acc(t1, _mm256_set1_pd(m[3].real()), _mm256_set1_pd(m[3].imag()), rho_r1);
  // (m^dagger) rows: (conj m00, conj m10), (conj m01, conj m11)
  const __m256d md_r0 = conj2(_mm256_set_pd(m[2].imag(), m[2].real(), m[0].imag(), m[0].real()));
  const __m256d md_r1 = conj2(_mm256_set_pd(m[3].imag(), m[3].real(), m[1].imag(), m[1].real()));
  alignas(32) double tt[8];
  _mm256_store_pd(tt, t0);
  _mm256_store_pd(tt + 4, t1);
  out_r0 = cmul_acc(out_r0, _mm256_set1_pd(tt[0]), _mm256_set1_pd(tt[1]), md_r0);
  out_r0 = cmul_acc(out_r0, _mm256_set1_pd(tt[2]), _mm256_set1_pd(tt[3]), md_r1);
  out_r1 = cmul_acc(out_r1, _mm256_set1_pd(tt[4]), _mm256_set1_pd(tt[5]), md_r0);
  out_r1 = cmul_acc(out_r1, _mm256_set1_pd(tt[6]), _mm256_set1_pd(tt[7]), md_r1);
}

}  // namespace

void channel2(const cplx* m_up, const cplx* m_down, const cplx* rho, cplx* out) {
  const __m256d r0 = load2(rho);
  const __m256d r1 = load2(rho + 2);
  __m256d o0 = _mm256_setzero_pd();
  __m256d o1 = _mm256_setzero_pd();
  sandwich(m_up, r0, r1, o0, o1);
  sandwich(m_down, r0, r1, o0, o1);
  store2(out, o0);
  store2(out + 2, o1);
}

}  // namespace hyperpol::kernels::avx2

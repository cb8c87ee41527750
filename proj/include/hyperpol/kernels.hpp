#pragma once

// Inner-loop kernels with a portable scalar reference and an AVX2/FMA variant.
// The variant is picked once at startup from CPUID; HYPERPOL_FORCE_SCALAR=1 in the
// environment pins the scalar path.
//
// Layouts are row-major complex<double>, i.e. interleaved (re, im) doubles.

#include <complex>
#include <string_view>

namespace hyperpol::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

// out = a * b for 4x4 matrices. out may not alias a or b.
using Matmul4Fn = void (*)(const cplx* a, const cplx* b, cplx* out);
// out = m_up rho m_up^dagger + m_down rho m_down^dagger for 2x2 matrices.
using Channel2Fn = void (*)(const cplx* m_up, const cplx* m_down, const cplx* rho, cplx* out);

namespace scalar {
void matmul4(const cplx* a, const cplx* b, cplx* out);
void channel2(const cplx* m_up, const cplx* m_down, const cplx* rho, cplx* out);
}  // namespace scalar

#if defined(HYPERPOL_HAVE_AVX2)
namespace avx2 {
void matmul4(const cplx* a, const cplx* b, cplx* out);
void channel2(const cplx* m_up, const cplx* m_down, const cplx* rho, cplx* out);
}  // namespace avx2
#endif

struct KernelTable {
  Isa isa;
  Matmul4Fn matmul4;
  Channel2Fn channel2;
};

// True when the AVX2 variant was compiled in and the CPU supports AVX2 and FMA.
bool avx2_available();

// Table for a specific ISA; falls back to scalar when the ISA is unavailable.
KernelTable table_for(Isa isa);

// Table chosen at startup.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace hyperpol::kernels

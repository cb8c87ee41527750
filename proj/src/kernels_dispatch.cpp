#include <cstdlib>
#include <string_view>

#include "hyperpol/kernels.hpp"

namespace hyperpol::kernels {

namespace {

bool force_scalar() {
  const char* env = std::getenv("HYPERPOL_FORCE_SCALAR");
  return env != nullptr && std::string_view(env) != "0" && std::string_view(env) != "";
}

KernelTable scalar_table() { return {Isa::scalar, &scalar::matmul4, &scalar::channel2}; }

}  // namespace

bool avx2_available() {
#if defined(HYPERPOL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernelTable table_for(Isa isa) {
#if defined(HYPERPOL_HAVE_AVX2)
  if (isa == Isa::avx2 && avx2_available()) return {Isa::avx2, &avx2::matmul4, &avx2::channel2};
#endif
  (void)isa;
  return scalar_table();
}

const KernelTable& active() {
  static const KernelTable table = force_scalar() ? scalar_table() : table_for(Isa::avx2);
  return table;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace hyperpol::kernels

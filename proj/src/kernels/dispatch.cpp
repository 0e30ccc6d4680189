#include "tperm/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace tperm::simd {

#ifdef TPERM_WITH_AVX2
const KernelTable* avx2_kernels_impl();
#endif

const KernelTable* avx2_kernels() {
#ifdef TPERM_WITH_AVX2
  return avx2_kernels_impl();
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("TPERM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
#ifdef TPERM_WITH_AVX2
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) return avx2_kernels_impl();
#endif
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace tperm::simd

#include <cstdlib>
#include <string_view>

#include "ppanav/ppa/kernels.hpp"

namespace ppanav::ppa {

#if defined(PPANAV_WITH_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(PPANAV_WITH_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* table = [] {
    const char* env = std::getenv("PPANAV_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
    if (const auto* simd = avx2_kernels()) return simd;
    return &scalar_kernels();
  }();
  return *table;
}

}  // namespace ppanav::ppa

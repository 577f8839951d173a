#include <cstdlib>
#include <string_view>

#include "coset_topo/simd.hpp"

namespace ctopo::simd {

const Kernels* avx2_kernels_impl();

const Kernels* avx2_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("COSET_TOPO_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return k;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace ctopo::simd

#pragma once

// Data-parallel inner loops used across the library.
//
// Every kernel has a portable scalar reference and, where the target
// supports it, an AVX2 variant. The active table is chosen once at startup
// from CPUID; COSET_TOPO_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ctopo::simd {

struct Kernels {
  std::string_view name;

  // Word-wise bit-set operations; n is the word count.
  void (*and_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  void (*or_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  void (*andnot_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t n);
  std::size_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);  // a ⊆ b
  bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

  // y[i] = (y[i] + c * x[i]) mod p, for p < 2^15 and all inputs already reduced.
  void (*axpy_mod)(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::uint32_t p,
                   std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Kernels* avx2_kernels();

// The table selected for this process.
const Kernels& active();

}  // namespace ctopo::simd

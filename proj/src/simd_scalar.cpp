#include "coset_topo/simd.hpp"

#include <bit>

namespace ctopo::simd {
namespace {

void and_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

std::size_t popcount(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::uint32_t p,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = (y[i] + c * x[i]) % p;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar",   and_words,  or_words,   andnot_words, popcount,
                         and_popcount, is_subset, intersects, axpy_mod};
  return k;
}

}  // namespace ctopo::simd

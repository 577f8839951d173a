// Compiled with -mavx2 -mpopcnt; only reached after a CPUID check.

#include "coset_topo/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <bit>

namespace ctopo::simd {
namespace {

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Nibble-table popcount, accumulated per 64-bit lane with SAD.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

void and_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) computes ~x & y.
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

std::size_t popcount(const std::uint64_t* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount_epi64(load(a + i)));
  std::size_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(load(a + i), load(b + i))));
  std::size_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i outside = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(outside, outside)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

// t = y + c*x < 2^31 for p < 2^15; the quotient estimate in double precision is
// off by at most one, fixed by two conditional corrections.
inline __m256i reduce_mod(__m256i t, __m256d inv_p, __m256i pv) {
  const __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(t));
  const __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(t, 1));
  const __m128i qlo = _mm256_cvttpd_epi32(_mm256_mul_pd(lo, inv_p));
  const __m128i qhi = _mm256_cvttpd_epi32(_mm256_mul_pd(hi, inv_p));
  const __m256i q = _mm256_set_m128i(qhi, qlo);
  __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, pv));
  r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(_mm256_setzero_si256(), r), pv));
  const __m256i pm1 = _mm256_sub_epi32(pv, _mm256_set1_epi32(1));
  r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, pm1), pv));
  return r;
}

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::uint32_t p,
              std::size_t n) {
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    const __m256i t = _mm256_add_epi32(yv, _mm256_mullo_epi32(cv, xv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce_mod(t, inv_p, pv));
  }
  for (; i < n; ++i) y[i] = (y[i] + c * x[i]) % p;
}

}  // namespace

const Kernels* avx2_kernels_impl() {
  static const Kernels k{"avx2",       and_words,  or_words,   andnot_words, popcount,
                         and_popcount, is_subset, intersects, axpy_mod};
  return &k;
}

}  // namespace ctopo::simd

#else

namespace ctopo::simd {
const Kernels* avx2_kernels_impl() { return nullptr; }
}  // namespace ctopo::simd

#endif

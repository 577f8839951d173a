#include <random>
#include <vector>

#include "coset_topo/simd.hpp"
#include "doctest.h"

using namespace ctopo::simd;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<std::uint64_t> w(n, 0);
  for (auto& x : w)
    for (int b = 0; b < 64; ++b)
      if (bit(rng)) x |= std::uint64_t{1} << b;
  return w;
}

}  // namespace

TEST_CASE("scalar bitset kernels on hand-checked words") {
  const Kernels& k = scalar_kernels();
  std::vector<std::uint64_t> a{0b1011, 0, ~std::uint64_t{0}};
  std::vector<std::uint64_t> b{0b0011, 1, ~std::uint64_t{0}};
  std::vector<std::uint64_t> d(3);
  CHECK(k.popcount(a.data(), 3) == 67);
  CHECK(k.and_popcount(a.data(), b.data(), 3) == 66);
  CHECK(k.is_subset(b.data(), a.data(), 1));
  CHECK_FALSE(k.is_subset(b.data(), a.data(), 2));
  k.andnot_words(d.data(), a.data(), b.data(), 3);
  CHECK(d[0] == 0b1000);
  CHECK(d[2] == 0);
}

TEST_CASE("scalar axpy_mod matches the definition") {
  const Kernels& k = scalar_kernels();
  const std::uint32_t p = 32749;
  std::vector<std::uint32_t> y{0, 1, p - 1, 12345}, x{p - 1, p - 1, p - 1, 7};
  k.axpy_mod(y.data(), x.data(), p - 1, p, y.size());
  CHECK(y[0] == 1);
  CHECK(y[1] == 2);
  CHECK(y[2] == 0);
  CHECK(y[3] == (12345 + std::uint64_t{p - 1} * 7) % p);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const Kernels* v = avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
    return;
  }
  const Kernels& s = scalar_kernels();
  std::mt19937_64 rng(1234);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 64u, 131u}) {
    for (double dens : {0.0, 0.05, 0.5, 0.97, 1.0}) {
      auto a = random_words(rng, n, dens);
      auto b = random_words(rng, n, dens);
      // Subset pairs are rare at random; build one explicitly.
      auto sub = a;
      for (auto& w : sub) w &= rng();
      CHECK(s.popcount(a.data(), n) == v->popcount(a.data(), n));
      CHECK(s.and_popcount(a.data(), b.data(), n) == v->and_popcount(a.data(), b.data(), n));
      CHECK(s.is_subset(a.data(), b.data(), n) == v->is_subset(a.data(), b.data(), n));
      CHECK(s.is_subset(sub.data(), a.data(), n) == v->is_subset(sub.data(), a.data(), n));
      CHECK(v->is_subset(sub.data(), a.data(), n));
      CHECK(s.intersects(a.data(), b.data(), n) == v->intersects(a.data(), b.data(), n));
      std::vector<std::uint64_t> d1(n), d2(n);
      s.and_words(d1.data(), a.data(), b.data(), n);
      v->and_words(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);
      s.or_words(d1.data(), a.data(), b.data(), n);
      v->or_words(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);
      s.andnot_words(d1.data(), a.data(), b.data(), n);
      v->andnot_words(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);
    }
  }
  for (std::uint32_t p : {2u, 3u, 101u, 32749u}) {
    std::uniform_int_distribution<std::uint32_t> digit(0, p - 1);
    for (std::size_t n : {1u, 7u, 8u, 9u, 33u, 1000u}) {
      std::vector<std::uint32_t> x(n), y(n);
      for (auto& e : x) e = digit(rng);
      for (auto& e : y) e = digit(rng);
      for (std::uint32_t c : {0u, 1u, p - 1, digit(rng)}) {
        auto y1 = y, y2 = y;
        s.axpy_mod(y1.data(), x.data(), c, p, n);
        v->axpy_mod(y2.data(), x.data(), c, p, n);
        CHECK(y1 == y2);
      }
    }
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coset_topo/numeric.hpp"
#include "coset_topo/topo.hpp"

namespace ctopo {

// ∂_k : C_k → C_{k−1}, column-compressed. ∂_0 is the augmentation onto a
// single row. Entries of column j are sorted by row.
struct BoundaryMatrix {
  int k = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<std::size_t> col_start;  // cols + 1 offsets
  std::vector<std::uint32_t> row;
  std::vector<std::int8_t> val;
};

// ∂_0 … ∂_{up_to+1}; throws std::invalid_argument if the complex is
// truncated below up_to + 1, InvariantViolation if ∂∘∂ ≠ 0 on the checked
// columns.
std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& k, int up_to);

struct SmithResult {
  std::vector<BigInt> factors;  // nonzero invariant factors d1 | d2 | …
  std::size_t rank = 0;
};
// Dense Smith normal form over ℤ with smallest-magnitude pivoting.
SmithResult smith_normal_form(std::vector<std::vector<BigInt>> m);

inline constexpr std::uint32_t kRankPrime = 32749;

// Rank over F_p, p < 2^15.
std::size_t rank_mod_p(const BoundaryMatrix& m, std::uint32_t p = kRankPrime);

struct IntegerReduction {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;        // invariant factors > 1
  std::vector<std::uint32_t> unit_lows;  // rows owning a ±1 pivot (safe to clear one degree down)
  std::size_t remainder_cols = 0;     // columns that needed the big-integer pass
};
// Exact rank and torsion of an integer matrix given by columns. Columns
// listed in `skip` are known to reduce to zero and are ignored.
IntegerReduction integer_reduce(const BoundaryMatrix& m, const std::vector<std::uint32_t>& skip = {});

struct DegreeHomology {
  int k = 0;
  std::int64_t betti = 0;
  std::vector<BigInt> torsion;
};

struct HomologyProfile {
  std::vector<DegreeHomology> degrees;  // k = −1 … up_to
  std::optional<std::int64_t> euler_reduced;  // set when every nonzero degree was computed
  std::size_t simplices = 0;
  std::size_t remainder_cols = 0;

  std::int64_t betti(int k) const;
  const std::vector<BigInt>& torsion(int k) const;
  bool torsion_free() const;
};

HomologyProfile reduced_homology(const SimplicialComplex& k, int up_to);
// Every degree of an untruncated complex.
HomologyProfile reduced_homology(const SimplicialComplex& k);

// Σ (−1)^k f_k − 1; requires an untruncated complex.
std::int64_t euler_characteristic(const SimplicialComplex& k);

struct ChainCounts {
  std::vector<std::int64_t> by_length;  // by_length[L] = chains with L + 1 elements
  std::int64_t euler_reduced = 0;
};
// Counts chains of P by dynamic programming over the up-sets, without
// enumerating them.
ChainCounts euler_characteristic_poset(const Poset& p);

}  // namespace ctopo

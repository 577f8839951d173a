#include "coset_topo/homology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "coset_topo/errors.hpp"
#include "coset_topo/simd.hpp"

namespace ctopo {

// ---------------------------------------------------------------------------
// Boundary matrices

namespace {

BoundaryMatrix build_boundary(const SimplicialComplex& k, int d) {
  BoundaryMatrix m;
  m.k = d;
  m.cols = k.count(d);
  m.rows = d == 0 ? 1 : k.count(d - 1);
  m.col_start.reserve(m.cols + 1);
  m.col_start.push_back(0);
  if (d == 0) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      m.row.push_back(0);
      m.val.push_back(1);
      m.col_start.push_back(m.row.size());
    }
    return m;
  }
  m.row.reserve(m.cols * (d + 1));
  m.val.reserve(m.cols * (d + 1));
  std::vector<Vertex> face(d);
  for (std::size_t j = 0; j < m.cols; ++j) {
    const auto s = k.simplex(d, j);
    // Dropping the last vertex gives the smallest face, so walk drop = d … 0
    // to emit rows in increasing order.
    for (int drop = d; drop >= 0; --drop) {
      std::size_t w = 0;
      for (int i = 0; i <= d; ++i)
        if (i != drop) face[w++] = s[i];
      const auto r = k.find(face);
      if (!r) throw InvariantViolation("boundary: missing face of a " + std::to_string(d) + "-simplex");
      m.row.push_back(static_cast<std::uint32_t>(*r));
      m.val.push_back(drop % 2 == 0 ? 1 : -1);
    }
    m.col_start.push_back(m.row.size());
  }
  return m;
}

void check_composition(const BoundaryMatrix& lower, const BoundaryMatrix& upper) {
  const std::size_t n = upper.cols;
  std::vector<std::size_t> cols;
  if (n <= 20000) {
    cols.resize(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  } else {
    std::mt19937_64 rng(0xb0b0 + upper.k);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 2000; ++t) cols.push_back(pick(rng));
  }
  std::unordered_map<std::uint32_t, std::int64_t> acc;
  for (std::size_t j : cols) {
    acc.clear();
    for (std::size_t e = upper.col_start[j]; e < upper.col_start[j + 1]; ++e) {
      const std::uint32_t f = upper.row[e];
      for (std::size_t e2 = lower.col_start[f]; e2 < lower.col_start[f + 1]; ++e2)
        acc[lower.row[e2]] += upper.val[e] * lower.val[e2];
    }
    for (const auto& [r, v] : acc)
      if (v != 0)
        throw InvariantViolation("boundary: d" + std::to_string(lower.k) + " o d" + std::to_string(upper.k) +
                                 " is nonzero");
  }
}

}  // namespace

std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& k, int up_to) {
  if (!k.complete_through(up_to + 1))
    throw std::invalid_argument("boundary_matrices: complex truncated below degree " + std::to_string(up_to + 1));
  std::vector<BoundaryMatrix> out;
  for (int d = 0; d <= up_to + 1; ++d) {
    out.push_back(build_boundary(k, d));
    if (d > 0) check_composition(out[d - 1], out[d]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithResult smith_normal_form(std::vector<std::vector<BigInt>> a) {
  SmithResult res;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  auto abs_less = [](const BigInt& x, const BigInt& y) { return abs(x) < abs(y); };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || abs_less(a[i][j], a[pi][pj]))) pi = i, pj = j;
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && abs_less(a[i][t], a[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[t][j] != 0 && abs_less(a[t][j], a[bi][bj])) bi = t, bj = j;
        std::swap(a[t], a[bi]);
        for (auto& row : a) std::swap(row[t], row[bj]);
        continue;
      }
      // Divisibility: fold in a row holding an entry the pivot does not divide.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
    }
    res.factors.push_back(abs(a[t][t]));
    ++res.rank;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Rank over F_p

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t to_mod(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::vector<char> skip_mask(std::size_t cols, const std::vector<std::uint32_t>& skip) {
  std::vector<char> s(cols, 0);
  for (auto c : skip)
    if (c < cols) s[c] = 1;
  return s;
}

std::size_t rank_mod_p_dense(const BoundaryMatrix& m, std::uint32_t p, const std::vector<char>& skip) {
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < m.cols; ++j)
    if (!skip[j]) live.push_back(j);
  const std::size_t r = m.rows, c = live.size();
  // Row-major so that elimination is an axpy over contiguous rows.
  std::vector<std::uint32_t> a(r * c, 0);
  for (std::size_t jj = 0; jj < c; ++jj) {
    const std::size_t j = live[jj];
    for (std::size_t e = m.col_start[j]; e < m.col_start[j + 1]; ++e)
      a[m.row[e] * c + jj] = to_mod(m.val[e], p);
  }
  const auto& kern = simd::active();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < r; ++col) {
    std::size_t piv = r;
    for (std::size_t i = rank; i < r; ++i)
      if (a[i * c + col]) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    if (piv != rank) std::swap_ranges(a.begin() + piv * c, a.begin() + (piv + 1) * c, a.begin() + rank * c);
    std::uint32_t* prow = a.data() + rank * c;
    const std::uint32_t inv = inv_mod(prow[col], p);
    for (std::size_t i = rank + 1; i < r; ++i) {
      std::uint32_t* row = a.data() + i * c;
      if (!row[col]) continue;
      const std::uint32_t f = static_cast<std::uint32_t>(p - std::uint64_t{row[col]} * inv % p);
      kern.axpy_mod(row + col, prow + col, f, p, c - col);
    }
    ++rank;
  }
  return rank;
}

template <class T>
using SparseCol = std::vector<std::pair<std::uint32_t, T>>;

std::size_t rank_mod_p_sparse(const BoundaryMatrix& m, std::uint32_t p, const std::vector<char>& skip) {
  std::vector<std::int64_t> pivot_of_row(m.rows, -1);
  std::vector<SparseCol<std::uint32_t>> reduced;
  SparseCol<std::uint32_t> col, tmp;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (skip[j]) continue;
    col.clear();
    for (std::size_t e = m.col_start[j]; e < m.col_start[j + 1]; ++e) col.emplace_back(m.row[e], to_mod(m.val[e], p));
    while (!col.empty()) {
      const auto [r, v] = col.back();
      const std::int64_t pi = pivot_of_row[r];
      if (pi < 0) {
        pivot_of_row[r] = static_cast<std::int64_t>(reduced.size());
        reduced.push_back(col);
        ++rank;
        break;
      }
      const auto& other = reduced[pi];
      const std::uint32_t f =
          static_cast<std::uint32_t>(p - std::uint64_t{v} * inv_mod(other.back().second, p) % p);
      tmp.clear();
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < other.size()) {
        if (b == other.size() || (a < col.size() && col[a].first < other[b].first)) {
          tmp.push_back(col[a++]);
        } else if (a == col.size() || other[b].first < col[a].first) {
          tmp.emplace_back(other[b].first, static_cast<std::uint32_t>(std::uint64_t{other[b].second} * f % p));
          ++b;
        } else {
          const std::uint32_t s = static_cast<std::uint32_t>((col[a].second + std::uint64_t{other[b].second} * f) % p);
          if (s) tmp.emplace_back(col[a].first, s);
          ++a, ++b;
        }
      }
      col.swap(tmp);
    }
  }
  return rank;
}

}  // namespace

std::size_t rank_mod_p(const BoundaryMatrix& m, std::uint32_t p) {
  return rank_mod_p_sparse(m, p, skip_mask(m.cols, {}));
}

namespace {

std::size_t rank_mod_p_cleared(const BoundaryMatrix& m, std::uint32_t p, const std::vector<std::uint32_t>& skip) {
  const auto mask = skip_mask(m.cols, skip);
  if (m.rows * m.cols <= (std::size_t{1} << 22)) return rank_mod_p_dense(m, p, mask);
  return rank_mod_p_sparse(m, p, mask);
}

}  // namespace

// ---------------------------------------------------------------------------
// Integer reduction

IntegerReduction integer_reduce(const BoundaryMatrix& m, const std::vector<std::uint32_t>& skip) {
  const auto mask = skip_mask(m.cols, skip);
  std::vector<std::int64_t> unit_of_row(m.rows, -1);
  std::vector<SparseCol<std::int64_t>> units;
  std::vector<SparseCol<std::int64_t>> stuck;  // non-unit lows or overflow
  SparseCol<std::int64_t> col, tmp;

  for (std::size_t j = 0; j < m.cols; ++j) {
    if (mask[j]) continue;
    col.clear();
    for (std::size_t e = m.col_start[j]; e < m.col_start[j + 1]; ++e) col.emplace_back(m.row[e], m.val[e]);
    while (!col.empty()) {
      const auto [r, v] = col.back();
      const std::int64_t ui = unit_of_row[r];
      if (ui < 0) {
        if (v == 1 || v == -1) {
          unit_of_row[r] = static_cast<std::int64_t>(units.size());
          units.push_back(col);
        } else {
          stuck.push_back(col);
        }
        break;
      }
      const auto& u = units[ui];
      const std::int64_t f = v * u.back().second;  // u's low is ±1
      tmp.clear();
      bool overflow = false;
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < u.size()) {
        if (b == u.size() || (a < col.size() && col[a].first < u[b].first)) {
          tmp.push_back(col[a++]);
        } else {
          std::int64_t prod = 0, sum = 0;
          if (__builtin_mul_overflow(f, u[b].second, &prod)) overflow = true;
          if (a < col.size() && col[a].first == u[b].first) {
            if (__builtin_sub_overflow(col[a].second, prod, &sum)) overflow = true;
            if (sum) tmp.emplace_back(u[b].first, sum);
            ++a;
          } else {
            if (__builtin_sub_overflow(std::int64_t{0}, prod, &sum)) overflow = true;
            tmp.emplace_back(u[b].first, sum);
          }
          ++b;
        }
        if (overflow) break;
      }
      if (overflow) {
        stuck.push_back(col);
        break;
      }
      col.swap(tmp);
    }
  }

  IntegerReduction res;
  res.rank = units.size();
  for (std::size_t r = 0; r < m.rows; ++r)
    if (unit_of_row[r] >= 0) res.unit_lows.push_back(static_cast<std::uint32_t>(r));
  res.remainder_cols = stuck.size();
  if (stuck.empty()) return res;

  // Clear every unit-pivot row from the stuck columns (descending, since a
  // unit column only touches rows at or below its low), leaving a block on
  // the non-pivot rows whose Smith form completes the answer.
  std::vector<std::map<std::uint32_t, BigInt>> rest;
  std::map<std::uint32_t, std::size_t> row_index;
  for (const auto& s : stuck) {
    std::map<std::uint32_t, BigInt> w;
    for (const auto& [r, v] : s) w.emplace(r, BigInt(v));
    std::int64_t bound = static_cast<std::int64_t>(m.rows) - 1;
    while (bound >= 0 && !w.empty()) {
      auto it = w.upper_bound(static_cast<std::uint32_t>(bound));
      std::int64_t found = -1;
      while (it != w.begin()) {
        --it;
        if (unit_of_row[it->first] >= 0) {
          found = it->first;
          break;
        }
      }
      if (found < 0) break;
      const auto& u = units[unit_of_row[found]];
      const BigInt f = w[static_cast<std::uint32_t>(found)] * u.back().second;
      for (const auto& [r, v] : u) {
        BigInt& x = w[r];
        x -= f * v;
        if (x == 0) w.erase(r);
      }
      bound = found - 1;
    }
    for (const auto& [r, v] : w) row_index.emplace(r, 0);
    if (!w.empty()) rest.push_back(std::move(w));
  }
  if (rest.empty()) return res;
  std::size_t next = 0;
  for (auto& [r, idx] : row_index) idx = next++;
  std::vector<std::vector<BigInt>> dense(row_index.size(), std::vector<BigInt>(rest.size()));
  for (std::size_t c = 0; c < rest.size(); ++c)
    for (const auto& [r, v] : rest[c]) dense[row_index[r]][c] = v;
  const SmithResult snf = smith_normal_form(std::move(dense));
  res.rank += snf.rank;
  for (const auto& d : snf.factors)
    if (d > 1) res.torsion.push_back(d);
  return res;
}

// ---------------------------------------------------------------------------
// Reduced homology

std::int64_t HomologyProfile::betti(int k) const {
  for (const auto& d : degrees)
    if (d.k == k) return d.betti;
  return 0;
}

const std::vector<BigInt>& HomologyProfile::torsion(int k) const {
  static const std::vector<BigInt> none;
  for (const auto& d : degrees)
    if (d.k == k) return d.torsion;
  return none;
}

bool HomologyProfile::torsion_free() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeHomology& d) { return d.torsion.empty(); });
}

HomologyProfile reduced_homology(const SimplicialComplex& k, int up_to) {
  if (up_to < -1) up_to = -1;
  if (!k.complete_through(up_to + 1))
    throw std::invalid_argument("reduced_homology: complex truncated below degree " + std::to_string(up_to + 1));
  HomologyProfile prof;
  prof.simplices = k.total();
  const int top = std::min(up_to + 1, k.dimension());
  // rank[d] = rank ∂_d for d = 0 … up_to + 2 (zero above the top).
  std::vector<std::size_t> rank(up_to + 3, 0);
  std::vector<std::vector<BigInt>> tors(up_to + 3);
  rank[0] = k.num_vertices() > 0 ? 1 : 0;
  std::vector<std::uint32_t> clear;
  for (int d = top; d >= 1; --d) {
    const BoundaryMatrix bm = build_boundary(k, d);
    if (d >= 2 && bm.cols > 0) {
      // Spot-check ∂∘∂ against the next matrix down.
      check_composition(build_boundary(k, d - 1), bm);
    }
    IntegerReduction ir = integer_reduce(bm, clear);
    const std::size_t rp = rank_mod_p_cleared(bm, kRankPrime, clear);
    if (rp > ir.rank) throw InvariantViolation("homology: rank mod p exceeds integer rank");
    if (rp < ir.rank) {
      const bool explained = std::any_of(ir.torsion.begin(), ir.torsion.end(),
                                         [](const BigInt& t) { return t % kRankPrime == 0; });
      if (!explained) throw InvariantViolation("homology: rank mod p disagrees with integer rank");
    }
    rank[d] = ir.rank;
    tors[d] = std::move(ir.torsion);
    prof.remainder_cols += ir.remainder_cols;
    clear = std::move(ir.unit_lows);
  }
  auto dim_c = [&](int d) -> std::int64_t { return d == -1 ? 1 : static_cast<std::int64_t>(k.count(d)); };
  std::int64_t euler = 0;
  for (int d = -1; d <= up_to; ++d) {
    DegreeHomology h;
    h.k = d;
    const std::int64_t rd = d >= 0 ? static_cast<std::int64_t>(rank[d]) : 0;
    h.betti = dim_c(d) - rd - static_cast<std::int64_t>(rank[d + 1]);
    h.torsion = tors[d + 1];
    std::sort(h.torsion.begin(), h.torsion.end());
    euler += (d % 2 == 0 ? 1 : -1) * h.betti;
    prof.degrees.push_back(std::move(h));
  }
  if (up_to >= k.dimension()) {
    prof.euler_reduced = euler;
    if (!k.truncated_at() && euler != euler_characteristic(k))
      throw InvariantViolation("homology: Betti sum disagrees with face counts");
  }
  return prof;
}

HomologyProfile reduced_homology(const SimplicialComplex& k) {
  if (k.truncated_at()) throw std::invalid_argument("reduced_homology: complex is truncated");
  return reduced_homology(k, std::max(k.dimension(), 0));
}

std::int64_t euler_characteristic(const SimplicialComplex& k) {
  if (k.truncated_at()) throw std::invalid_argument("euler_characteristic: complex is truncated");
  std::int64_t chi = -1;
  for (int d = 0; d <= k.dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(k.count(d));
  return chi;
}

ChainCounts euler_characteristic_poset(const Poset& p) {
  // counts[x][L] = chains with minimum x and L + 1 elements.
  std::vector<std::vector<std::int64_t>> counts(p.size());
  ChainCounts out;
  for (std::size_t x = p.size(); x-- > 0;) {
    auto& c = counts[x];
    c.assign(1, 1);
    for (Vertex y : p.up(static_cast<Vertex>(x))) {
      const auto& cy = counts[y];
      if (c.size() < cy.size() + 1) c.resize(cy.size() + 1, 0);
      for (std::size_t l = 0; l < cy.size(); ++l)
        if (__builtin_add_overflow(c[l + 1], cy[l], &c[l + 1]))
          throw BudgetExceeded("chain count overflow");
    }
    if (out.by_length.size() < c.size()) out.by_length.resize(c.size(), 0);
    for (std::size_t l = 0; l < c.size(); ++l)
      if (__builtin_add_overflow(out.by_length[l], c[l], &out.by_length[l]))
        throw BudgetExceeded("chain count overflow");
  }
  out.euler_reduced = -1;
  for (std::size_t l = 0; l < out.by_length.size(); ++l)
    out.euler_reduced += (l % 2 == 0 ? 1 : -1) * out.by_length[l];
  return out;
}

}  // namespace ctopo

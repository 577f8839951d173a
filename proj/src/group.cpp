#include "coset_topo/group.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "coset_topo/errors.hpp"

namespace ctopo {

namespace {

std::vector<std::uint16_t> flatten(const std::vector<std::vector<Element>>& rows) {
  std::vector<std::uint16_t> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows)
    for (Element e : r) flat.push_back(static_cast<std::uint16_t>(e));
  return flat;
}

void check_order_guard(std::size_t order, const std::string& what) {
  if (order == 0 || order > kOrderHardCap)
    throw GroupError(what + ": order " + std::to_string(order) + " outside [1, " +
                     std::to_string(kOrderHardCap) + "]");
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProductStructure

Element ProductStructure::normal_coord(Element g) const {
  return static_cast<Element>(g % normal->order());
}
Element ProductStructure::complement_coord(Element g) const {
  return static_cast<Element>(g / normal->order());
}
Element ProductStructure::pair(Element n, Element h) const {
  return static_cast<Element>(h * normal->order() + n);
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::uint16_t> table, std::size_t order, std::string label,
                         std::vector<std::string> element_labels)
    : order_(order), table_(std::move(table)), label_(std::move(label)),
      element_labels_(std::move(element_labels)) {
  check_order_guard(order_, label_);
  if (table_.size() != order_ * order_)
    throw InvariantViolation(label_ + ": Cayley table has " + std::to_string(table_.size()) +
                             " entries, expected " + std::to_string(order_ * order_));
  if (element_labels_.empty()) {
    element_labels_.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) element_labels_.push_back("g" + std::to_string(i));
  }
  validate();
}

void FiniteGroup::validate() {
  const std::size_t n = order_;
  for (std::uint16_t v : table_)
    if (v >= n) throw InvariantViolation(label_ + ": table entry " + std::to_string(v) + " out of range");
  for (std::size_t a = 0; a < n; ++a) {
    if (mul(0, static_cast<Element>(a)) != a || mul(static_cast<Element>(a), 0) != a)
      throw InvariantViolation(label_ + ": element 0 is not the identity (row/column " +
                               std::to_string(a) + ")");
  }
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      auto v = table_[a * n + b];
      if (seen[v]) throw InvariantViolation(label_ + ": row " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      auto v = table_[b * n + a];
      if (seen[v]) throw InvariantViolation(label_ + ": column " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
  }
  auto fail_assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    throw InvariantViolation(label_ + ": associativity fails for (" + std::to_string(a) + ", " +
                             std::to_string(b) + ", " + std::to_string(c) + ")");
  };
  if (n <= kFullAssociativityGuard) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t ab = table_[a * n + b];
        const std::uint16_t* row_ab = &table_[ab * n];
        const std::uint16_t* row_b = &table_[b * n];
        const std::uint16_t* row_a = &table_[a * n];
        for (std::size_t c = 0; c < n; ++c)
          if (row_ab[c] != row_a[row_b[c]]) fail_assoc(a, b, c);
      }
  } else {
    std::mt19937_64 rng(0x5eed5eedULL ^ n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 400000; ++i) {
      std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      if (table_[table_[a * n + b] * n + c] != table_[a * n + table_[b * n + c]]) fail_assoc(a, b, c);
    }
  }
  // Inverses exist by the Latin-square property.
  inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a * n + b] == 0) {
        inv_[a] = static_cast<Element>(b);
        break;
      }
}

std::optional<Element> FiniteGroup::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < order_; ++i)
    if (element_labels_[i] == label) return static_cast<Element>(i);
  return std::nullopt;
}

ElementSet FiniteGroup::all() const {
  ElementSet s(order_);
  for (std::size_t i = 0; i < order_; ++i) s.insert(static_cast<Element>(i));
  return s;
}

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup make_cyclic(std::size_t n) {
  check_order_guard(n, "cyclic");
  std::vector<std::uint16_t> t(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
  }
  return FiniteGroup(std::move(t), n, "Z/" + std::to_string(n), std::move(labels));
}

FiniteGroup make_dihedral(std::size_t n) {
  if (n < 2) throw GroupError("dihedral: n must be at least 2");
  const std::size_t order = 2 * n;
  check_order_guard(order, "dihedral");
  // Index k < n is r^k, index n + k is s r^k; (s^a r^b)(s^c r^d) = s^(a+c) r^((-1)^c b + d).
  std::vector<std::uint16_t> t(order * order);
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t a = x / n, b = x % n;
    labels.push_back(a ? (b ? "s r^" + std::to_string(b) : "s") : (b ? "r^" + std::to_string(b) : "1"));
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t c = y / n, d = y % n;
      const std::size_t rb = c ? (n - b) % n : b;
      t[x * order + y] = static_cast<std::uint16_t>(((a + c) % 2) * n + (rb + d) % n);
    }
  }
  return FiniteGroup(std::move(t), order, "D" + std::to_string(order), std::move(labels));
}

FiniteGroup make_quaternion() {
  // Units 1, i, j, k with signs; index = 2*unit + (negative ? 1 : 0).
  // unit_mul[u][v] = (sign, unit) of u·v.
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> unit_mul{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  const std::array<std::string, 4> names{"1", "i", "j", "k"};
  std::vector<std::uint16_t> t(64);
  std::vector<std::string> labels;
  for (int x = 0; x < 8; ++x) {
    labels.push_back((x % 2 ? "-" : "") + names[x / 2]);
    for (int y = 0; y < 8; ++y) {
      auto [s, u] = unit_mul[x / 2][y / 2];
      const int sign = s * (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1);
      t[x * 8 + y] = static_cast<std::uint16_t>(2 * u + (sign < 0 ? 1 : 0));
    }
  }
  return FiniteGroup(std::move(t), 8, "Q8", std::move(labels));
}

namespace {

std::string cycle_label(const std::vector<int>& perm) {
  const std::size_t n = perm.size();
  std::vector<char> seen(n, 0);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(perm[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

bool is_even(const std::vector<int>& perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0;
}

// Product a·b means "apply b, then a".
FiniteGroup permutation_group(std::size_t n, bool even_only, std::string label) {
  if (n < 2 || n > 8) throw GroupError(label + ": degree must lie in [2, 8]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  check_order_guard(perms.size(), label);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  const std::size_t order = perms.size();
  std::vector<std::uint16_t> t(order * order);
  std::vector<int> c(n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < order; ++a) {
    labels.push_back(cycle_label(perms[a]));
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      t[a * order + b] = static_cast<std::uint16_t>(index.at(c));
    }
  }
  return FiniteGroup(std::move(t), order, std::move(label), std::move(labels));
}

struct Mat2 {
  std::uint32_t a, b, c, d;
  auto operator<=>(const Mat2&) const = default;
};

Mat2 canonical(Mat2 m, std::uint32_t p) {
  auto neg = [p](std::uint32_t v) { return (p - v) % p; };
  Mat2 n{neg(m.a), neg(m.b), neg(m.c), neg(m.d)};
  return std::min(m, n);
}

std::string mat_label(const Mat2& m) {
  return "[" + std::to_string(m.a) + " " + std::to_string(m.b) + "; " + std::to_string(m.c) + " " +
         std::to_string(m.d) + "]";
}

}  // namespace

FiniteGroup make_alternating(std::size_t n) { return permutation_group(n, true, "A" + std::to_string(n)); }
FiniteGroup make_symmetric(std::size_t n) { return permutation_group(n, false, "S" + std::to_string(n)); }

FiniteGroup make_psl2(std::uint32_t p) {
  if (!is_prime(p)) throw GroupError("psl2: p = " + std::to_string(p) + " is not prime");
  if (p < 5 || p > 13) throw GroupError("psl2: p must lie in [5, 13]");
  std::vector<Mat2> reps;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          if ((a * d + p * p - (b * c) % p) % p != 1) continue;
          Mat2 m{a, b, c, d};
          if (canonical(m, p) == m) reps.push_back(m);
        }
  std::sort(reps.begin(), reps.end());
  const Mat2 id{1, 0, 0, 1};
  auto it = std::find(reps.begin(), reps.end(), id);
  std::rotate(reps.begin(), it, it + 1);
  const std::size_t order = reps.size();
  check_order_guard(order, "psl2");
  const std::size_t p4 = static_cast<std::size_t>(p) * p * p * p;
  std::vector<std::uint32_t> lookup(p4, 0);
  auto key = [p](const Mat2& m) { return ((static_cast<std::size_t>(m.a) * p + m.b) * p + m.c) * p + m.d; };
  for (std::size_t i = 0; i < order; ++i) lookup[key(reps[i])] = static_cast<std::uint32_t>(i);
  std::vector<std::uint16_t> t(order * order);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < order; ++i) {
    labels.push_back(mat_label(reps[i]));
    const Mat2& x = reps[i];
    for (std::size_t j = 0; j < order; ++j) {
      const Mat2& y = reps[j];
      Mat2 z{(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p, (x.c * y.a + x.d * y.c) % p,
             (x.c * y.b + x.d * y.d) % p};
      t[i * order + j] = static_cast<std::uint16_t>(lookup[key(canonical(z, p))]);
    }
  }
  return FiniteGroup(std::move(t), order, "PSL2(" + std::to_string(p) + ")", std::move(labels));
}

Element psl2_element(const FiniteGroup& g, std::uint32_t p, std::int64_t a, std::int64_t b, std::int64_t c,
                     std::int64_t d) {
  auto md = [p](std::int64_t v) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  };
  Mat2 m{md(a), md(b), md(c), md(d)};
  if ((static_cast<std::uint64_t>(m.a) * m.d + static_cast<std::uint64_t>(p) * p - (m.b * m.c) % p) % p != 1)
    throw GroupError("psl2_element: determinant is not 1");
  auto idx = g.find_label(mat_label(canonical(m, p)));
  if (!idx) throw GroupError("psl2_element: element not found in " + g.label());
  return *idx;
}

std::uint32_t psl2_trace_squared(const FiniteGroup& g, std::uint32_t p, Element e) {
  unsigned a = 0, b = 0, c = 0, d = 0;
  if (std::sscanf(g.element_label(e).c_str(), "[%u %u; %u %u]", &a, &b, &c, &d) != 4)
    throw GroupError("psl2_trace_squared: " + g.label() + " has no matrix labels");
  const std::uint32_t tr = (a + d) % p;
  return (tr * tr) % p;
}

FiniteGroup make_semidirect(const FiniteGroup& n_grp, const FiniteGroup& h_grp,
                            const std::vector<std::vector<Element>>& action) {
  const std::size_t nn = n_grp.order(), nh = h_grp.order();
  check_order_guard(nn * nh, "semidirect");
  if (action.size() != nh) throw GroupError("semidirect: action must list one automorphism per complement element");
  for (std::size_t h = 0; h < nh; ++h) {
    const auto& phi = action[h];
    if (phi.size() != nn) throw GroupError("semidirect: action entry " + std::to_string(h) + " has wrong length");
    std::vector<char> hit(nn, 0);
    for (Element x : phi) {
      if (x >= nn || hit[x]) throw GroupError("semidirect: action(" + std::to_string(h) + ") is not a bijection");
      hit[x] = 1;
    }
    for (Element x = 0; x < nn; ++x)
      for (Element y = 0; y < nn; ++y)
        if (phi[n_grp.mul(x, y)] != n_grp.mul(phi[x], phi[y]))
          throw GroupError("semidirect: action(" + std::to_string(h) + ") is not an automorphism");
  }
  for (Element h1 = 0; h1 < nh; ++h1)
    for (Element h2 = 0; h2 < nh; ++h2) {
      const auto& composite = action[h_grp.mul(h1, h2)];
      for (Element x = 0; x < nn; ++x)
        if (composite[x] != action[h1][action[h2][x]])
          throw GroupError("semidirect: action is not a homomorphism into Aut(N)");
    }
  const std::size_t order = nn * nh;
  std::vector<std::uint16_t> t(order * order);
  std::vector<std::string> labels;
  bool trivial = true;
  for (std::size_t h = 0; h < nh && trivial; ++h)
    for (Element x = 0; x < nn; ++x)
      if (action[h][x] != x) { trivial = false; break; }
  for (std::size_t g1 = 0; g1 < order; ++g1) {
    const Element n1 = static_cast<Element>(g1 % nn), h1 = static_cast<Element>(g1 / nn);
    labels.push_back("(" + n_grp.element_label(n1) + ", " + h_grp.element_label(h1) + ")");
    for (std::size_t g2 = 0; g2 < order; ++g2) {
      const Element n2 = static_cast<Element>(g2 % nn), h2 = static_cast<Element>(g2 / nn);
      const Element n = n_grp.mul(n1, action[h1][n2]);
      const Element h = h_grp.mul(h1, h2);
      t[g1 * order + g2] = static_cast<std::uint16_t>(h * nn + n);
    }
  }
  const std::string sep = trivial ? " x " : " : ";
  FiniteGroup g(std::move(t), order, n_grp.label() + sep + h_grp.label(), std::move(labels));
  ProductStructure ps;
  ps.semidirect = !trivial;
  ps.normal = std::make_shared<const FiniteGroup>(n_grp);
  ps.complement = std::make_shared<const FiniteGroup>(h_grp);
  ps.action = action;
  g.set_product(std::move(ps));
  return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  check_order_guard(a.order() * b.order(), "direct product");
  std::vector<Element> id(a.order());
  std::iota(id.begin(), id.end(), 0);
  return make_semidirect(a, b, std::vector<std::vector<Element>>(b.order(), id));
}

FiniteGroup make_cyclic_semidirect(std::size_t n, std::size_t m, std::size_t r) {
  FiniteGroup zn = make_cyclic(n), zm = make_cyclic(m);
  std::vector<std::vector<Element>> action(m, std::vector<Element>(n));
  std::size_t mult = 1;
  for (std::size_t h = 0; h < m; ++h) {
    for (std::size_t x = 0; x < n; ++x) action[h][x] = static_cast<Element>((mult * x) % n);
    mult = (mult * r) % n;
  }
  return make_semidirect(zn, zm, action);
}

FiniteGroup make_from_table(const std::vector<std::vector<std::uint32_t>>& rows, std::string label) {
  const std::size_t n = rows.size();
  check_order_guard(n, label);
  for (const auto& r : rows)
    if (r.size() != n) throw InvariantViolation(label + ": Cayley table is not square");
  return FiniteGroup(flatten(rows), n, std::move(label));
}

// ---------------------------------------------------------------------------
// Primitives

std::size_t element_order(const FiniteGroup& g, Element e) {
  std::size_t k = 1;
  for (Element x = e; x != 0; x = g.mul(x, e)) ++k;
  return k;
}

std::vector<std::size_t> element_orders(const FiniteGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (Element e = 0; e < g.order(); ++e) out[e] = element_order(g, e);
  return out;
}

Element power(const FiniteGroup& g, Element e, std::size_t k) {
  Element r = 0;
  for (std::size_t i = 0; i < k; ++i) r = g.mul(r, e);
  return r;
}

namespace {

// Subgroup generated by `start` (a subgroup) and `gens`. The result is kept
// as a union of left cosets yS and is closed under right multiplication by
// every generator, so every element is visited once per generator.
ElementSet coset_closure(const FiniteGroup& g, const ElementSet& start, std::span<const Element> gens) {
  ElementSet out = start;
  const std::vector<Element> base = start.elements();
  std::vector<Element> queue = base;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Element x : gens) {
      const Element y = g.mul(queue[i], x);
      if (out.contains(y)) continue;
      for (Element s : base) {
        const Element ys = g.mul(y, s);
        out.insert(ys);
        queue.push_back(ys);
      }
    }
  }
  return out;
}

}  // namespace

ElementSet generated_subgroup(const FiniteGroup& g, std::span<const Element> gens) {
  ElementSet s(g.order());
  s.insert(0);
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Element x : gens) {
      const Element y = g.mul(queue[i], x);
      if (!s.contains(y)) {
        s.insert(y);
        queue.push_back(y);
      }
    }
  return s;
}

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& seed) {
  const auto gens = seed.elements();
  return generated_subgroup(g, std::span<const Element>(gens));
}

ElementSet extend_subgroup(const FiniteGroup& g, const ElementSet& subgroup, std::span<const Element> extra) {
  return coset_closure(g, subgroup, extra);
}

bool generates(const FiniteGroup& g, std::span<const Element> gens) {
  // Any subgroup larger than half the group is the group.
  const std::size_t half = g.order() / 2;
  ElementSet s(g.order());
  s.insert(0);
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Element x : gens) {
      const Element y = g.mul(queue[i], x);
      if (!s.contains(y)) {
        s.insert(y);
        queue.push_back(y);
        if (queue.size() > half) return true;
      }
    }
  return queue.size() == g.order();
}

bool coset_generates_proper(const FiniteGroup& g, std::span<const Element> elems) {
  if (elems.empty()) throw GroupError("coset_generates_proper: empty element set");
  const Element x1inv = g.inv(elems[0]);
  std::vector<Element> gens;
  gens.reserve(elems.size());
  for (std::size_t i = 1; i < elems.size(); ++i) gens.push_back(g.mul(x1inv, elems[i]));
  if (g.order() == 1) return false;
  return !generates(g, gens);
}

bool coset_generates_proper(const FiniteGroup& g, const ElementSet& elems) {
  const auto v = elems.elements();
  return coset_generates_proper(g, std::span<const Element>(v));
}

bool is_abelian(const FiniteGroup& g) {
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

std::size_t exponent(const FiniteGroup& g) {
  std::size_t e = 1;
  for (std::size_t o : element_orders(g)) e = std::lcm(e, o);
  return e;
}

std::vector<Element> small_generating_tuple(const FiniteGroup& g, std::size_t max_size) {
  const auto orders = element_orders(g);
  std::vector<Element> by_order(g.order());
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Element a, Element b) { return orders[a] > orders[b]; });
  std::vector<Element> tuple;
  ElementSet current = generated_subgroup(g, std::span<const Element>{});
  while (current.size() < g.order()) {
    if (tuple.size() == max_size)
      throw GroupError(g.label() + ": no generating tuple of size <= " + std::to_string(max_size));
    Element best = 0;
    std::size_t best_size = current.size();
    for (Element x : by_order) {
      if (current.contains(x)) continue;
      const Element extra[1] = {x};
      const std::size_t sz = extend_subgroup(g, current, extra).size();
      if (sz > best_size) {
        best = x;
        best_size = sz;
        if (sz == g.order()) break;
      }
    }
    tuple.push_back(best);
    const Element extra[1] = {best};
    current = extend_subgroup(g, current, extra);
  }
  return tuple;
}

namespace {

template <class Visit>
void enumerate_automorphisms(const FiniteGroup& g, Visit&& visit) {
  const std::size_t n = g.order();
  if (n == 1) {
    visit(std::vector<Element>{0});
    return;
  }
  const auto gens = small_generating_tuple(g, 3);
  const auto orders = element_orders(g);
  // Spanning tree of the Cayley graph: every element = parent · gens[via].
  std::vector<Element> parent(n, 0), via(n, 0), bfs{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = g.mul(bfs[i], gens[k]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = bfs[i];
        via[y] = static_cast<Element>(k);
        bfs.push_back(y);
      }
    }
  std::vector<std::vector<Element>> candidates(gens.size());
  std::size_t total = 1;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (Element x = 0; x < n; ++x)
      if (orders[x] == orders[gens[k]]) candidates[k].push_back(x);
    total *= candidates[k].size();
    if (total > 50'000'000) throw GroupError(g.label() + ": automorphism search space too large");
  }
  std::vector<Element> images(gens.size()), phi(n);
  std::vector<char> hit(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      images[k] = candidates[k][c % candidates[k].size()];
      c /= candidates[k].size();
    }
    phi[0] = 0;
    for (std::size_t i = 1; i < bfs.size(); ++i) {
      const Element y = bfs[i];
      phi[y] = g.mul(phi[parent[y]], images[via[y]]);
    }
    std::fill(hit.begin(), hit.end(), 0);
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) {
      if (hit[phi[x]]) ok = false;
      hit[phi[x]] = 1;
    }
    // φ(a·g_k) = φ(a)·φ(g_k) for all a and every generator makes φ a homomorphism.
    for (Element a = 0; a < n && ok; ++a)
      for (std::size_t k = 0; k < gens.size() && ok; ++k)
        if (phi[g.mul(a, gens[k])] != g.mul(phi[a], images[k])) ok = false;
    if (ok) visit(phi);
  }
}

}  // namespace

std::size_t automorphism_count(const FiniteGroup& g) {
  std::size_t count = 0;
  enumerate_automorphisms(g, [&](const std::vector<Element>&) { ++count; });
  return count;
}

std::vector<std::vector<Element>> automorphisms(const FiniteGroup& g) {
  std::vector<std::vector<Element>> out;
  enumerate_automorphisms(g, [&](const std::vector<Element>& phi) { out.push_back(phi); });
  return out;
}

}  // namespace ctopo

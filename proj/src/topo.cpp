#include "coset_topo/topo.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coset_topo/errors.hpp"
#include "json.hpp"

namespace ctopo {

std::string to_string(PosetKind k) {
  switch (k) {
    case PosetKind::coset: return "coset";
    case PosetKind::subgroup: return "subgroup";
    case PosetKind::product: return "product";
    case PosetKind::derived: return "derived";
  }
  return "derived";
}

// ---------------------------------------------------------------------------
// Poset

Poset::Poset(PosetKind kind, std::vector<std::vector<Vertex>> up, std::vector<std::string> labels)
    : kind_(kind), up_(std::move(up)), labels_(std::move(labels)) {
  for (auto& u : up_) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  if (labels_.empty()) {
    labels_.reserve(up_.size());
    for (std::size_t i = 0; i < up_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != up_.size()) throw InvariantViolation("poset: label count does not match element count");
}

bool Poset::lt(Vertex x, Vertex y) const {
  if (y <= x) return false;
  return std::binary_search(up_[x].begin(), up_[x].end(), y);
}

std::size_t Poset::relation_count() const {
  std::size_t n = 0;
  for (const auto& u : up_) n += u.size();
  return n;
}

std::vector<Vertex> Poset::minimal_elements() const {
  std::vector<char> has_below(size(), 0);
  for (const auto& u : up_)
    for (Vertex y : u) has_below[y] = 1;
  std::vector<Vertex> out;
  for (Vertex x = 0; x < size(); ++x)
    if (!has_below[x]) out.push_back(x);
  return out;
}

void Poset::verify() const {
  for (Vertex x = 0; x < size(); ++x) {
    for (Vertex y : up_[x]) {
      if (y <= x || y >= size()) throw InvariantViolation("poset: relation " + label(x) + " < " + label(y) + " breaks index order");
      if (!std::includes(up_[x].begin(), up_[x].end(), up_[y].begin(), up_[y].end()))
        throw InvariantViolation("poset: not transitive above " + label(x));
    }
  }
}

Poset induced_subposet(const Poset& p, const std::vector<char>& keep, PosetKind kind) {
  std::vector<Vertex> renum(p.size(), 0);
  Vertex next = 0;
  for (Vertex x = 0; x < p.size(); ++x) renum[x] = keep[x] ? next++ : 0;
  std::vector<std::vector<Vertex>> up;
  std::vector<std::string> labels;
  std::vector<CosetLabel> cosets;
  up.reserve(next);
  for (Vertex x = 0; x < p.size(); ++x) {
    if (!keep[x]) continue;
    std::vector<Vertex> u;
    for (Vertex y : p.up(x))
      if (keep[y]) u.push_back(renum[y]);
    up.push_back(std::move(u));
    labels.push_back(p.label(x));
    if (!p.cosets.empty()) cosets.push_back(p.cosets[x]);
  }
  Poset out(kind, std::move(up), std::move(labels));
  out.cosets = std::move(cosets);
  return out;
}

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex::SimplicialComplex(std::size_t num_vertices, std::optional<int> truncated_at)
    : n_(num_vertices), truncated_at_(truncated_at) {
  if (n_ > 0) {
    flat_.emplace_back(n_);
    std::iota(flat_[0].begin(), flat_[0].end(), 0);
  }
}

std::size_t SimplicialComplex::count(int k) const {
  if (k < 0 || k > dimension()) return 0;
  return flat_[k].size() / (k + 1);
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int k = 0; k <= dimension(); ++k) f.push_back(count(k));
  return f;
}

std::size_t SimplicialComplex::total() const {
  std::size_t t = 0;
  for (int k = 0; k <= dimension(); ++k) t += count(k);
  return t;
}

std::optional<std::size_t> SimplicialComplex::find(std::span<const Vertex> s) const {
  const int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > dimension()) return std::nullopt;
  const std::size_t w = k + 1;
  std::size_t lo = 0, hi = count(k);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const Vertex* m = flat_[k].data() + mid * w;
    if (std::lexicographical_compare(m, m + w, s.begin(), s.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count(k) && std::equal(s.begin(), s.end(), flat_[k].data() + lo * w)) return lo;
  return std::nullopt;
}

std::size_t SimplicialComplex::stored_words() const {
  std::size_t w = 0;
  for (const auto& f : flat_) w += f.size();
  return w;
}

void SimplicialComplex::append(std::span<const Vertex> s) {
  const int k = static_cast<int>(s.size()) - 1;
  if (k <= 0) return;  // vertices are implicit
  while (dimension() < k) flat_.emplace_back();
  flat_[k].insert(flat_[k].end(), s.begin(), s.end());
}

void SimplicialComplex::normalize_dim(int k) {
  const std::size_t w = k + 1;
  auto& a = flat_[k];
  const std::size_t n = a.size() / w;
  auto less = [&](std::size_t i, std::size_t j) {
    return std::lexicographical_compare(a.begin() + i * w, a.begin() + (i + 1) * w, a.begin() + j * w,
                                        a.begin() + (j + 1) * w);
  };
  bool sorted = true;
  for (std::size_t i = 1; i < n && sorted; ++i) sorted = less(i - 1, i);
  if (sorted) return;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), less);
  std::vector<Vertex> out;
  out.reserve(a.size());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = idx[r];
    if (r > 0 && std::equal(a.begin() + i * w, a.begin() + (i + 1) * w, out.end() - w)) continue;
    out.insert(out.end(), a.begin() + i * w, a.begin() + (i + 1) * w);
  }
  a = std::move(out);
}

void SimplicialComplex::normalize() {
  for (int k = 1; k <= dimension(); ++k) normalize_dim(k);
  while (dimension() > 0 && flat_.back().empty()) flat_.pop_back();
}

void SimplicialComplex::verify() const {
  std::vector<Vertex> face;
  for (int k = 1; k <= dimension(); ++k) {
    if (!complete_through(k - 1)) break;
    for (std::size_t i = 0; i < count(k); ++i) {
      const auto s = simplex(k, i);
      for (std::size_t j = 1; j < s.size(); ++j)
        if (s[j - 1] >= s[j]) throw InvariantViolation("complex: unsorted simplex");
      if (s.back() >= n_) throw InvariantViolation("complex: vertex out of range");
      for (std::size_t drop = 0; drop <= static_cast<std::size_t>(k); ++drop) {
        face.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) face.push_back(s[j]);
        if (!find(face)) throw InvariantViolation("complex: missing face of a " + std::to_string(k) + "-simplex");
      }
    }
  }
}

namespace {

void check_budget(std::size_t used, std::size_t budget) {
  if (used > budget) throw BudgetExceeded("simplex budget of " + std::to_string(budget) + " exceeded");
}

// Appends every subset of a facet with 2 ≤ size ≤ cap. Facets overlap, so
// the running count includes duplicates; when it passes the budget, or the
// raw buffer passes kMaxRawWords, the complex is deduplicated and the real
// count decides.
constexpr std::size_t kMaxRawWords = std::size_t{1} << 27;

class SubsetEmitter {
 public:
  SubsetEmitter(SimplicialComplex& k, std::size_t cap, std::size_t budget)
      : k_(k), cap_(cap), budget_(budget), used_(k.total()), threshold_(budget) {
    check_budget(used_, budget_);
  }

  void emit(const std::vector<Vertex>& f) {
    cur_.clear();
    rec(f, 0);
  }

 private:
  void rec(const std::vector<Vertex>& f, std::size_t start) {
    for (std::size_t i = start; i < f.size(); ++i) {
      cur_.push_back(f[i]);
      if (cur_.size() >= 2) {
        k_.append(cur_);
        words_ += cur_.size();
        if (++used_ > threshold_ || words_ > kMaxRawWords) compact();
      }
      if (cur_.size() < cap_) rec(f, i + 1);
      cur_.pop_back();
    }
  }

  void compact() {
    k_.normalize();
    used_ = k_.total();
    check_budget(used_, budget_);
    words_ = k_.stored_words();
    if (words_ > kMaxRawWords / 2)
      throw BudgetExceeded("simplex storage limit of " + std::to_string(kMaxRawWords / 2) + " vertex entries exceeded");
    threshold_ = used_ + budget_;
  }

  SimplicialComplex& k_;
  std::size_t cap_, budget_, used_, threshold_;
  std::size_t words_ = 0;
  std::vector<Vertex> cur_;
};

}  // namespace

SimplicialComplex complex_from_facets(std::size_t num_vertices, const std::vector<std::vector<Vertex>>& facets,
                                      std::optional<int> max_dim, std::size_t budget) {
  SimplicialComplex k(num_vertices, max_dim);
  const std::size_t cap = max_dim ? static_cast<std::size_t>(*max_dim) + 1 : SIZE_MAX;
  SubsetEmitter emit(k, cap, budget);
  for (const auto& f : facets) emit.emit(f);
  k.normalize();
  check_budget(k.total(), budget);
  return k;
}

// ---------------------------------------------------------------------------
// Group-derived posets

ElementSet coset_members(const SubgroupLattice& lat, CosetLabel c) {
  const FiniteGroup& g = *lat.group;
  ElementSet out(g.order());
  lat.subgroups[c.subgroup].for_each([&](Element h) { out.insert(g.mul(c.rep, h)); });
  return out;
}

namespace {

// coset_id[i][x] = index of the coset x·H_i among the cosets of H_i, counted
// from the first coset of H_i.
struct CosetTable {
  std::vector<std::vector<Vertex>> local;  // per subgroup, per element
  std::vector<std::vector<Element>> reps;  // per subgroup, reps in ascending order
};

CosetTable coset_table(const SubgroupLattice& lat, const std::vector<char>& which) {
  const FiniteGroup& g = *lat.group;
  const std::size_t n = g.order();
  CosetTable t;
  t.local.resize(lat.size());
  t.reps.resize(lat.size());
  for (std::size_t h = 0; h < lat.size(); ++h) {
    if (!which[h]) continue;
    auto& loc = t.local[h];
    loc.assign(n, UINT32_MAX);
    const auto elems = lat.subgroups[h].elements();
    for (Element x = 0; x < n; ++x) {
      if (loc[x] != UINT32_MAX) continue;
      const Vertex id = static_cast<Vertex>(t.reps[h].size());
      t.reps[h].push_back(x);
      for (Element s : elems) loc[g.mul(x, s)] = id;
    }
  }
  return t;
}

std::vector<char> proper_mask(const SubgroupLattice& lat) {
  std::vector<char> m(lat.size(), 1);
  m[lat.top()] = 0;
  return m;
}

}  // namespace

Poset coset_poset_filtered(const SubgroupLattice& lat, const std::vector<char>& keep_subgroup) {
  const FiniteGroup& g = *lat.group;
  std::vector<char> which = keep_subgroup;
  which.resize(lat.size(), 0);
  which[lat.top()] = 0;
  const CosetTable t = coset_table(lat, which);
  std::vector<Vertex> base(lat.size(), 0);
  Vertex total = 0;
  for (std::size_t h = 0; h < lat.size(); ++h) {
    base[h] = total;
    total += static_cast<Vertex>(t.reps[h].size());
  }
  std::vector<std::vector<Vertex>> up(total);
  std::vector<std::string> labels(total);
  std::vector<CosetLabel> cosets(total);
  for (std::size_t h = 0; h < lat.size(); ++h) {
    if (!which[h]) continue;
    std::vector<std::size_t> above;
    lat.above[h].for_each([&](Element k) {
      if (k != h && which[k]) above.push_back(k);
    });
    for (std::size_t c = 0; c < t.reps[h].size(); ++c) {
      const Vertex id = base[h] + static_cast<Vertex>(c);
      const Element x = t.reps[h][c];
      cosets[id] = {h, x};
      labels[id] = g.element_label(x) + "H" + std::to_string(h);
      up[id].reserve(above.size());
      for (std::size_t k : above) up[id].push_back(base[k] + t.local[k][x]);
    }
  }
  Poset p(PosetKind::coset, std::move(up), std::move(labels));
  p.cosets = std::move(cosets);
  return p;
}

Poset coset_poset(const SubgroupLattice& lat) { return coset_poset_filtered(lat, proper_mask(lat)); }

Poset subgroup_poset(const SubgroupLattice& lat) {
  const std::size_t n = lat.size();
  std::vector<std::vector<Vertex>> up;
  std::vector<std::string> labels;
  if (n > 2) {
    for (std::size_t h = 1; h + 1 < n; ++h) {
      std::vector<Vertex> u;
      lat.above[h].for_each([&](Element k) {
        if (k != h && k + 1 < n) u.push_back(static_cast<Vertex>(k - 1));
      });
      up.push_back(std::move(u));
      labels.push_back("H" + std::to_string(h));
    }
  }
  return Poset(PosetKind::subgroup, std::move(up), std::move(labels));
}

SimplicialComplex order_complex(const Poset& p, std::optional<int> max_dim, std::size_t budget) {
  SimplicialComplex k(p.size(), max_dim);
  check_budget(p.size(), budget);
  std::size_t used = p.size();
  const std::size_t cap = max_dim ? static_cast<std::size_t>(*max_dim) + 1 : SIZE_MAX;
  std::vector<Vertex> chain;
  // Depth-first over the up-sets emits each dimension in lexicographic order.
  auto rec = [&](auto&& self) -> void {
    if (chain.size() >= cap) return;
    for (Vertex y : p.up(chain.back())) {
      chain.push_back(y);
      k.append(chain);
      check_budget(++used, budget);
      self(self);
      chain.pop_back();
    }
  };
  for (Vertex x = 0; x < p.size(); ++x) {
    chain.assign(1, x);
    rec(rec);
  }
  k.normalize();
  return k;
}

SimplicialComplex minimal_cover_skeleton(const SubgroupLattice& lat, std::optional<int> k, std::size_t budget) {
  if (k && *k < 1) throw std::invalid_argument("minimal_cover_skeleton: k must be at least 1");
  const FiniteGroup& g = *lat.group;
  if (g.order() == 1) return SimplicialComplex(0, k);
  std::vector<char> maximal(lat.size(), 0);
  for (std::size_t i = 0; i < lat.size(); ++i) maximal[i] = lat.maximal[i];
  const CosetTable t = coset_table(lat, maximal);
  std::vector<std::vector<Vertex>> facets;
  for (std::size_t m = 0; m < lat.size(); ++m) {
    if (!maximal[m]) continue;
    for (Element x : t.reps[m]) facets.push_back(coset_members(lat, {m, x}).elements());
  }
  return complex_from_facets(g.order(), facets, k, budget);
}

CrossCutComplex crosscut_prime_complex(const SubgroupLattice& lat, std::optional<int> max_dim, std::size_t budget) {
  const FiniteGroup& g = *lat.group;
  CrossCutComplex out;
  if (g.order() == 1) {
    out.complex = SimplicialComplex(0, max_dim);
    return out;
  }
  auto is_prime = [](std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  std::vector<char> prime(lat.size(), 0);
  for (std::size_t i = 0; i + 1 < lat.size(); ++i) prime[i] = is_prime(lat.order(i));
  // A group of prime order has no proper prime-order subgroups; its atoms
  // (the singletons) form the cross-cut instead.
  if (std::none_of(prime.begin(), prime.end(), [](char c) { return c; })) prime[0] = 1;

  std::vector<char> table_mask = prime;
  for (std::size_t i = 0; i < lat.size(); ++i) table_mask[i] |= lat.maximal[i];
  const CosetTable t = coset_table(lat, table_mask);
  std::vector<Vertex> base(lat.size(), 0);
  Vertex nv = 0;
  for (std::size_t h = 0; h < lat.size(); ++h) {
    if (!prime[h]) continue;
    base[h] = nv;
    for (Element x : t.reps[h]) out.vertices.push_back({h, x});
    nv += static_cast<Vertex>(t.reps[h].size());
  }
  std::vector<std::vector<Vertex>> facets;
  // Bounded above: the prime cosets inside one maximal coset.
  for (std::size_t m = 0; m < lat.size(); ++m) {
    if (!lat.maximal[m]) continue;
    for (Element y : t.reps[m]) {
      const ElementSet members = coset_members(lat, {m, y});
      std::vector<Vertex> f;
      for (std::size_t p = 0; p < lat.size(); ++p) {
        if (!prime[p] || !lat.leq(p, m)) continue;
        members.for_each([&](Element z) { f.push_back(base[p] + t.local[p][z]); });
      }
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      facets.push_back(std::move(f));
    }
  }
  // Bounded below: the prime cosets through one element.
  for (Element z = 0; z < g.order(); ++z) {
    std::vector<Vertex> f;
    for (std::size_t p = 0; p < lat.size(); ++p)
      if (prime[p]) f.push_back(base[p] + t.local[p][z]);
    facets.push_back(std::move(f));
  }
  out.complex = complex_from_facets(nv, facets, max_dim, budget);
  return out;
}

SimplicialComplex nerve(const std::vector<std::vector<Vertex>>& cover, std::optional<int> max_dim,
                        std::size_t budget) {
  Vertex universe = 0;
  for (const auto& c : cover) {
    if (c.empty()) throw std::invalid_argument("nerve: empty cover member");
    universe = std::max(universe, *std::max_element(c.begin(), c.end()) + 1);
  }
  std::vector<std::vector<Vertex>> through(universe);
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (Vertex v : cover[i]) through[v].push_back(static_cast<Vertex>(i));
  for (auto& f : through) f.erase(std::unique(f.begin(), f.end()), f.end());
  return complex_from_facets(cover.size(), through, max_dim, budget);
}

std::vector<std::vector<Vertex>> atom_cone_cover(const Poset& p) {
  std::vector<std::vector<Vertex>> out;
  for (Vertex a : p.minimal_elements()) {
    std::vector<Vertex> c{a};
    c.insert(c.end(), p.up(a).begin(), p.up(a).end());
    out.push_back(std::move(c));
  }
  return out;
}

Poset face_poset(const SimplicialComplex& k) {
  if (k.truncated_at()) throw std::invalid_argument("face_poset: complex is truncated");
  std::vector<std::size_t> offset(k.dimension() + 2, 0);
  for (int d = 0; d <= k.dimension(); ++d) offset[d + 1] = offset[d] + k.count(d);
  const std::size_t n = offset.back();
  std::vector<std::vector<Vertex>> up(n);
  std::vector<std::string> labels(n);
  std::vector<Vertex> face;
  for (int d = 0; d <= k.dimension(); ++d)
    for (std::size_t i = 0; i < k.count(d); ++i) {
      const auto s = k.simplex(d, i);
      const Vertex id = static_cast<Vertex>(offset[d] + i);
      std::string lab;
      for (Vertex v : s) lab += (lab.empty() ? "" : ",") + std::to_string(v);
      labels[id] = "{" + lab + "}";
      const std::uint32_t full = (1u << (d + 1)) - 1;
      for (std::uint32_t mask = 1; mask < full; ++mask) {
        face.clear();
        for (int j = 0; j <= d; ++j)
          if (mask >> j & 1u) face.push_back(s[j]);
        const auto fi = k.find(face);
        if (!fi) throw InvariantViolation("face_poset: complex not closed under faces");
        up[offset[face.size() - 1] + *fi].push_back(id);
      }
    }
  return Poset(PosetKind::derived, std::move(up), std::move(labels));
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k, std::size_t budget) {
  return order_complex(face_poset(k), std::nullopt, budget);
}

Poset poset_product(const Poset& p, const Poset& q, std::size_t budget) {
  const std::size_t np = p.size(), nq = q.size();
  if (np * nq > budget) throw BudgetExceeded("poset_product: product too large");
  std::vector<std::vector<Vertex>> up(np * nq);
  std::vector<std::string> labels(np * nq);
  std::size_t used = 0;
  for (Vertex x = 0; x < np; ++x)
    for (Vertex y = 0; y < nq; ++y) {
      auto& u = up[x * nq + y];
      std::vector<Vertex> vs{x}, ws{y};
      vs.insert(vs.end(), p.up(x).begin(), p.up(x).end());
      ws.insert(ws.end(), q.up(y).begin(), q.up(y).end());
      for (Vertex v : vs)
        for (Vertex w : ws)
          if (v != x || w != y) u.push_back(static_cast<Vertex>(v * nq + w));
      used += u.size();
      check_budget(used, budget);
      labels[x * nq + y] = "(" + p.label(x) + "," + q.label(y) + ")";
    }
  return Poset(PosetKind::product, std::move(up), std::move(labels));
}

Poset chain_poset(std::size_t n) {
  std::vector<std::vector<Vertex>> up(n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y) up[x].push_back(y);
  return Poset(PosetKind::derived, std::move(up));
}

Poset antichain_poset(std::size_t n) { return Poset(PosetKind::derived, std::vector<std::vector<Vertex>>(n)); }

namespace {

// Smallest subgroup of N containing `seed` and stable under every action map.
ElementSet invariant_closure(const FiniteGroup& n, const std::vector<std::vector<Element>>& action, ElementSet s) {
  for (;;) {
    ElementSet next = generated_subgroup(n, s);
    ElementSet img = next;
    next.for_each([&](Element e) {
      for (const auto& a : action) img.insert(a[e]);
    });
    if (img == s) return s;
    s = std::move(img);
  }
}

}  // namespace

Poset nonsaturating_subposet(const Poset& cosets, const SubgroupLattice& lat, ProductMode mode) {
  const FiniteGroup& g = *lat.group;
  const auto& ps = g.product();
  if (!ps) throw GroupError(g.label() + ": product metadata missing");
  if (cosets.cosets.size() != cosets.size()) throw GroupError("nonsaturating_subposet: not a coset poset");
  if (mode == ProductMode::direct && ps->semidirect)
    throw GroupError(g.label() + ": direct mode requested for a nontrivial semidirect product");
  const FiniteGroup& n = *ps->normal;
  const FiniteGroup& h = *ps->complement;
  if (n.order() < 2 || h.order() < 2) throw GroupError(g.label() + ": product factors must be nontrivial");

  std::vector<char> saturating(lat.size(), 0);
  for (std::size_t t = 0; t < lat.size(); ++t) {
    ElementSet fn(n.order()), fh(h.order());
    lat.subgroups[t].for_each([&](Element e) {
      fn.insert(ps->normal_coord(e));
      fh.insert(ps->complement_coord(e));
    });
    if (fh.size() != h.order()) continue;
    if (mode == ProductMode::direct)
      saturating[t] = fn.size() == n.order();
    else
      saturating[t] = invariant_closure(n, ps->action, fn).size() == n.order();
  }
  std::vector<char> keep(cosets.size());
  for (Vertex x = 0; x < cosets.size(); ++x) keep[x] = !saturating[cosets.cosets[x].subgroup];
  return induced_subposet(cosets, keep, PosetKind::coset);
}

Poset invariant_coset_poset(const SubgroupLattice& normal_lat, const std::vector<std::vector<Element>>& action) {
  std::vector<char> keep(normal_lat.size(), 0);
  for (std::size_t i = 0; i + 1 < normal_lat.size(); ++i) {
    bool inv = true;
    for (const auto& a : action) {
      normal_lat.subgroups[i].for_each([&](Element e) {
        if (!normal_lat.subgroups[i].contains(a[e])) inv = false;
      });
      if (!inv) break;
    }
    keep[i] = inv;
  }
  return coset_poset_filtered(normal_lat, keep);
}

namespace {

// Greatest element of {z ∈ fiber : z ≤ y, z ≤ c}, if there is one.
std::optional<Vertex> meet_in(const Poset& p, const std::vector<Vertex>& fiber, Vertex y, Vertex c) {
  auto le = [&](Vertex a, Vertex b) { return a == b || p.lt(a, b); };
  std::optional<Vertex> best;
  for (Vertex z : fiber) {
    if (!le(z, y) || !le(z, c)) continue;
    if (!best || le(*best, z)) best = z;
  }
  if (!best) return std::nullopt;
  for (Vertex z : fiber)
    if (le(z, y) && le(z, c) && !le(z, *best)) return std::nullopt;
  return best;
}

// The fiber is contractible if some c has a meet with every element inside
// the fiber: y ≥ y∧c ≤ c is then a chain of order homotopies to a constant.
// A cone is the case where c is comparable to everything.
bool contractible_by_meets(const Poset& p, const std::vector<Vertex>& fiber) {
  for (Vertex c : fiber) {
    if (std::all_of(fiber.begin(), fiber.end(), [&](Vertex y) { return p.comparable(c, y); })) return true;
  }
  for (Vertex c : fiber) {
    if (std::all_of(fiber.begin(), fiber.end(), [&](Vertex y) { return meet_in(p, fiber, y, c).has_value(); }))
      return true;
  }
  return false;
}

}  // namespace

PruneResult prune_with_cone_fibers(const Poset& p, const std::vector<Vertex>& remove) {
  std::vector<char> removed(p.size(), 0);
  for (Vertex x : remove) removed.at(x) = 1;
  std::vector<Vertex> fiber;
  for (Vertex x : remove) {
    fiber.clear();
    for (Vertex y : p.up(x))
      if (!removed[y]) fiber.push_back(y);
    if (fiber.empty()) throw InvariantViolation("prune: fiber over " + p.label(x) + " is empty");
    if (!contractible_by_meets(p, fiber))
      throw InvariantViolation("prune: fiber over " + p.label(x) + " is not a cone");
  }
  std::vector<char> keep(p.size());
  PruneResult r;
  for (Vertex x = 0; x < p.size(); ++x) {
    keep[x] = !removed[x];
    if (keep[x]) r.kept.push_back(x);
  }
  r.poset = induced_subposet(p, keep, p.kind());
  return r;
}

std::vector<Vertex> cosets_of(const Poset& p, const std::vector<char>& subgroup_mask) {
  std::vector<Vertex> out;
  for (Vertex x = 0; x < p.cosets.size(); ++x)
    if (subgroup_mask[p.cosets[x].subgroup]) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Exchange format

void write_complex(std::ostream& out, const SimplicialComplex& k, const std::string& header_json) {
  out << header_json << '\n';
  for (int d = 0; d <= k.dimension(); ++d)
    for (std::size_t i = 0; i < k.count(d); ++i) {
      out << d;
      for (Vertex v : k.simplex(d, i)) out << ' ' << v;
      out << '\n';
    }
}

SimplicialComplex read_complex(std::istream& in, std::string* header_json) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("complex file: missing header line");
  std::optional<int> trunc;
  try {
    const auto h = nlohmann::json::parse(header);
    if (h.contains("truncated_at") && !h["truncated_at"].is_null()) trunc = h["truncated_at"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("complex file: bad header: ") + e.what());
  }
  if (header_json) *header_json = header;
  std::vector<std::vector<Vertex>> rows;
  std::size_t nv = 0;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long d = -1;
    if (!(ls >> d) || d < 0) throw ParseError("complex file: bad dimension on line " + std::to_string(lineno));
    std::vector<Vertex> s;
    long long v;
    while (ls >> v) {
      if (v < 0) throw ParseError("complex file: negative vertex on line " + std::to_string(lineno));
      s.push_back(static_cast<Vertex>(v));
    }
    if (!ls.eof() || s.size() != static_cast<std::size_t>(d + 1) || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ParseError("complex file: malformed simplex on line " + std::to_string(lineno));
    if (d == 0) nv = std::max<std::size_t>(nv, s[0] + 1);
    rows.push_back(std::move(s));
  }
  SimplicialComplex k(nv, trunc);
  for (const auto& s : rows) {
    if (s.back() >= nv) throw ParseError("complex file: simplex uses an unlisted vertex");
    k.append(s);
  }
  k.normalize();
  if (k.total() != rows.size()) throw ParseError("complex file: duplicate simplices or gaps in vertex list");
  k.verify();
  return k;
}

}  // namespace ctopo

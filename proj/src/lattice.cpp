#include "coset_topo/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "coset_topo/errors.hpp"

namespace ctopo {

std::optional<SubgroupIndex> SubgroupLattice::index_of(const ElementSet& s) const {
  auto it = lookup.find(s);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

namespace {

ElementSet conjugate_set(const FiniteGroup& g, Element x, const ElementSet& s) {
  ElementSet out(g.order());
  s.for_each([&](Element e) { out.insert(g.conj(x, e)); });
  return out;
}

// Join of subgroup a (with generators ga) and the generators gb. Keeps only
// the generators that actually enlarge the subgroup.
std::pair<ElementSet, std::vector<Element>> join(const FiniteGroup& g, const ElementSet& a,
                                                 const std::vector<Element>& ga,
                                                 const std::vector<Element>& gb) {
  ElementSet s = a;
  std::vector<Element> gens = ga;
  for (Element x : gb) {
    if (s.contains(x)) continue;
    const Element extra[1] = {x};
    s = extend_subgroup(g, s, extra);
    gens.push_back(x);
  }
  return {std::move(s), std::move(gens)};
}

bool is_prime_power(std::size_t n, std::size_t* prime) {
  if (n < 2) return false;
  std::size_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  if (prime) *prime = p;
  return n == 1;
}

}  // namespace

SubgroupLattice enumerate_subgroups(GroupPtr gp) {
  const FiniteGroup& g = *gp;
  if (g.order() > kOrderHardCap) throw GroupError(g.label() + ": order exceeds lattice guard");

  std::vector<ElementSet> subs;
  std::vector<std::vector<Element>> gens;
  std::unordered_map<ElementSet, SubgroupIndex, ElementSetHash> seen;
  auto add = [&](ElementSet s, std::vector<Element> gs) {
    if (seen.count(s)) return;
    seen.emplace(s, subs.size());
    subs.push_back(std::move(s));
    gens.push_back(std::move(gs));
  };

  add(generated_subgroup(g, std::span<const Element>{}), {});
  for (Element x = 1; x < g.order(); ++x) {
    const Element one[1] = {x};
    add(generated_subgroup(g, one), {x});
  }
  // Pairwise join closure: subgroup i is joined with every subgroup already
  // present when i is processed; later arrivals handle the remaining pairs.
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (subs[i].is_subset_of(subs[j]) || subs[j].is_subset_of(subs[i])) continue;
      auto [s, gs] = join(g, subs[i], gens[i], gens[j]);
      add(std::move(s), std::move(gs));
    }
  }

  std::vector<std::size_t> perm(subs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return subs[a] < subs[b]; });

  SubgroupLattice lat;
  lat.group = gp;
  const std::size_t n = subs.size();
  lat.subgroups.reserve(n);
  lat.generators.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    lat.subgroups.push_back(std::move(subs[perm[k]]));
    lat.generators.push_back(std::move(gens[perm[k]]));
    lat.lookup.emplace(lat.subgroups.back(), k);
  }
  if (lat.subgroups.back().size() != g.order())
    throw InvariantViolation(g.label() + ": lattice top is not the whole group");

  lat.above.assign(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (lat.subgroups[j].size() % lat.subgroups[i].size() == 0 && lat.subgroups[i].is_subset_of(lat.subgroups[j]))
        lat.above[i].insert(static_cast<Element>(j));

  const std::vector<Element>& ggens = lat.generators.back();
  lat.normal.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (Element x : ggens) {
      const ElementSet& h = lat.subgroups[i];
      bool ok = true;
      for (Element s : lat.generators[i])
        if (!h.contains(g.conj(x, s))) ok = false;
      if (!ok) {
        lat.normal[i] = 0;
        break;
      }
    }

  lat.maximal.assign(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) lat.maximal[i] = lat.above[i].size() == 2;

  lat.conj_class.assign(n, n);
  std::size_t next_class = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lat.conj_class[i] != n) continue;
    std::vector<std::size_t> orbit{i};
    lat.conj_class[i] = next_class;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (Element x : ggens) {
        const auto j = lat.index_of(conjugate_set(g, x, lat.subgroups[orbit[k]]));
        if (!j) throw InvariantViolation(g.label() + ": conjugate subgroup missing from lattice");
        if (lat.conj_class[*j] == n) {
          lat.conj_class[*j] = next_class;
          orbit.push_back(*j);
        }
      }
    ++next_class;
  }
  return lat;
}

ElementSet normalizer(const FiniteGroup& g, const ElementSet& h) {
  const auto elems = h.elements();
  ElementSet out(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element s : elems)
      if (!h.contains(g.conj(x, s))) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  return out;
}

std::string type_tag(const FiniteGroup& g, const ElementSet& h) {
  const std::size_t n = h.size();
  if (n == 1) return "1";
  const auto elems = h.elements();
  std::vector<std::size_t> ord(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) ord[i] = element_order(g, elems[i]);
  if (std::find(ord.begin(), ord.end(), n) != ord.end()) return "Z/" + std::to_string(n);
  if (n % 2 == 0 && n >= 4) {
    // Dihedral: a cyclic subgroup of index 2 whose complement is all involutions.
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (ord[i] != n / 2) continue;
      const Element one[1] = {elems[i]};
      const ElementSet c = generated_subgroup(g, one);
      bool ok = true;
      for (std::size_t k = 0; k < elems.size() && ok; ++k)
        if (!c.contains(elems[k]) && ord[k] != 2) ok = false;
      if (ok) return "D" + std::to_string(n);
    }
  }
  bool abelian = true;
  for (std::size_t a = 0; a < elems.size() && abelian; ++a)
    for (std::size_t b = a + 1; b < elems.size() && abelian; ++b)
      if (g.mul(elems[a], elems[b]) != g.mul(elems[b], elems[a])) abelian = false;
  return (abelian ? "abelian-" : "G") + std::to_string(n);
}

std::map<std::string, std::size_t> subgroup_census(const SubgroupLattice& lat) {
  std::map<std::string, std::size_t> out;
  for (const auto& s : lat.subgroups) ++out[type_tag(*lat.group, s)];
  return out;
}

MobiusTable interval_mobius(const SubgroupLattice& lat, SubgroupIndex top) {
  MobiusTable t;
  t.mu.assign(lat.size(), 0);
  t.mu[top] = 1;
  for (std::size_t k = top; k-- > 0;) {
    if (!lat.leq(k, top)) continue;
    std::int64_t sum = 0;
    lat.above[k].for_each([&](Element j) {
      if (j != k && j <= top && lat.leq(j, top)) sum += t.mu[j];
    });
    t.mu[k] = -sum;
  }
  return t;
}

MobiusTable mobius(const SubgroupLattice& lat) { return interval_mobius(lat, lat.top()); }

std::int64_t mobius_via_chains(const SubgroupLattice& lat, SubgroupIndex h) {
  const SubgroupIndex top = lat.top();
  if (h == top) return 1;
  // f(K) = signed count of chains in (h, G) with minimum K.
  std::vector<std::int64_t> f(lat.size(), 0);
  std::int64_t chi = -1;
  for (std::size_t k = top; k-- > h + 1;) {
    if (!lat.leq(h, k)) continue;
    std::int64_t v = 1;
    lat.above[k].for_each([&](Element j) {
      if (j != k && j != top) v -= f[j];
    });
    f[k] = v;
    chi += v;
  }
  return chi;
}

Rational prob_zeta(const SubgroupLattice& lat, const MobiusTable& mu, std::int64_t s) {
  Rational total = 0;
  const std::size_t n = lat.group->order();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (mu.mu[i] == 0) continue;
    const BigInt index = n / lat.order(i);
    BigInt power = 1;
    for (std::int64_t k = 0; k < (s < 0 ? -s : s); ++k) power *= index;
    if (s >= 0)
      total += Rational(BigInt(mu.mu[i]), power);
    else
      total += Rational(BigInt(mu.mu[i]) * power);
  }
  return total;
}

std::int64_t sigma_ab(const FiniteGroup& g, const ElementSet& h, std::size_t a, std::size_t b) {
  std::int64_t ca = 0, cb = 0;
  h.for_each([&](Element e) {
    const std::size_t o = element_order(g, e);
    ca += o == a;
    cb += o == b;
  });
  return ca * cb;
}

std::int64_t phi_ab(const SubgroupLattice& lat, const MobiusTable& mu, std::size_t a, std::size_t b) {
  const FiniteGroup& g = *lat.group;
  const auto orders = element_orders(g);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (mu.mu[i] == 0) continue;
    std::int64_t ca = 0, cb = 0;
    lat.subgroups[i].for_each([&](Element e) {
      ca += orders[e] == a;
      cb += orders[e] == b;
    });
    total += mu.mu[i] * ca * cb;
  }
  return total;
}

Rational Phi_ab(const SubgroupLattice& lat, const MobiusTable& mu, std::size_t a, std::size_t b,
                std::size_t aut_order) {
  if (aut_order == 0) throw InvariantViolation("Phi_ab: automorphism count is zero");
  const std::int64_t phi = phi_ab(lat, mu, a, b);
  const Rational r{BigInt(phi), BigInt(aut_order)};
  if (phi < 0 || boost::multiprecision::denominator(r) != 1)
    throw InvariantViolation("Phi_" + std::to_string(a) + "," + std::to_string(b) + " = " +
                             to_fraction_string(r) + " is not a nonnegative integer");
  return r;
}

bool is_solvable(const FiniteGroup& g) {
  ElementSet cur = g.all();
  while (cur.size() > 1) {
    const auto elems = cur.elements();
    ElementSet comm(g.order());
    for (Element a : elems)
      for (Element b : elems) comm.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    ElementSet next = generated_subgroup(g, comm);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

ChiefSeriesReport chief_series(const SubgroupLattice& lat) {
  ChiefSeriesReport r;
  r.applicable = is_solvable(*lat.group);
  const std::size_t n = lat.size();
  const std::size_t gorder = lat.group->order();
  SubgroupIndex cur = lat.trivial();
  r.series.push_back(cur);
  while (cur != lat.top()) {
    // Lowest-index normal subgroup minimal over cur.
    SubgroupIndex next = lat.top();
    for (std::size_t j = cur + 1; j < n; ++j) {
      if (!lat.normal[j] || !lat.leq(cur, j)) continue;
      bool minimal = true;
      for (std::size_t m = cur + 1; m < j && minimal; ++m)
        if (lat.normal[m] && m != j && lat.leq(cur, m) && lat.leq(m, j)) minimal = false;
      if (minimal) {
        next = j;
        break;
      }
    }
    const std::size_t ratio = lat.order(next) / lat.order(cur);
    bool comp = false;
    for (std::size_t k = 0; k < n && !comp; ++k) {
      if (!lat.leq(cur, k)) continue;
      if (lat.subgroups[k].intersection_size(lat.subgroups[next]) != lat.order(cur)) continue;
      comp = lat.order(k) * ratio == gorder;
    }
    r.complemented.push_back(comp);
    r.d += comp;
    r.series.push_back(next);
    cur = next;
  }
  return r;
}

std::size_t subgroup_poset_components(const SubgroupLattice& lat) {
  const std::size_t n = lat.size();
  if (n <= 2) return 0;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 1; i + 1 < n; ++i)
    lat.above[i].for_each([&](Element j) {
      if (j != i && j + 1 < n) parent[find(i)] = find(j);
    });
  std::size_t comps = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) comps += find(i) == i;
  return comps;
}

std::optional<std::pair<SubgroupIndex, std::size_t>> cyclic_prime_power_maximal(const SubgroupLattice& lat) {
  const FiniteGroup& g = *lat.group;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!lat.maximal[i]) continue;
    std::size_t p = 0;
    if (!is_prime_power(lat.order(i), &p)) continue;
    if (lat.generators[i].size() == 1 || type_tag(g, lat.subgroups[i]).starts_with("Z/")) return std::pair{i, p};
  }
  return std::nullopt;
}

bool is_cyclic_prime_power(const FiniteGroup& g) {
  if (g.order() == 1) return true;
  if (!is_prime_power(g.order(), nullptr)) return false;
  for (Element x = 0; x < g.order(); ++x)
    if (element_order(g, x) == g.order()) return true;
  return false;
}

}  // namespace ctopo

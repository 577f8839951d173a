#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coset_topo/group.hpp"
#include "coset_topo/numeric.hpp"

namespace ctopo {

using SubgroupIndex = std::size_t;

// Every subgroup of a finite group, sorted by (order, element list): index 0
// is the trivial subgroup and the last index is the whole group.
struct SubgroupLattice {
  GroupPtr group;
  std::vector<ElementSet> subgroups;
  std::vector<std::vector<Element>> generators;  // a small generating set per subgroup
  std::vector<ElementSet> above;                 // above[i] = {j : subgroups[i] ⊆ subgroups[j]}
  std::vector<char> normal;
  std::vector<char> maximal;
  std::vector<std::size_t> conj_class;

  std::size_t size() const { return subgroups.size(); }
  SubgroupIndex trivial() const { return 0; }
  SubgroupIndex top() const { return subgroups.size() - 1; }
  std::size_t order(SubgroupIndex i) const { return subgroups[i].size(); }
  bool leq(SubgroupIndex i, SubgroupIndex j) const { return above[i].contains(static_cast<Element>(j)); }
  std::optional<SubgroupIndex> index_of(const ElementSet& s) const;

  std::unordered_map<ElementSet, SubgroupIndex, ElementSetHash> lookup;
};

SubgroupLattice enumerate_subgroups(GroupPtr g);

ElementSet normalizer(const FiniteGroup& g, const ElementSet& h);

// Short isomorphism-type tag: "1", "Z/n", "D2n" (V4 is "D4"), "abelian-n"
// or "G<n>" for anything else.
std::string type_tag(const FiniteGroup& g, const ElementSet& h);
// Count of subgroups per type tag.
std::map<std::string, std::size_t> subgroup_census(const SubgroupLattice& lat);

struct MobiusTable {
  std::vector<std::int64_t> mu;  // μ_G(H) per subgroup index
};

MobiusTable mobius(const SubgroupLattice& lat);
// μ(K, top) for every K ≤ top (entries outside the interval are 0).
MobiusTable interval_mobius(const SubgroupLattice& lat, SubgroupIndex top);
// χ̃ of the order complex of the open interval (h, G), by chain counting.
std::int64_t mobius_via_chains(const SubgroupLattice& lat, SubgroupIndex h);

// P(G, s) = Σ_H μ(H, G) / (G:H)^s, exact.
Rational prob_zeta(const SubgroupLattice& lat, const MobiusTable& mu, std::int64_t s);

// (#elements of order a in H) · (#elements of order b in H).
std::int64_t sigma_ab(const FiniteGroup& g, const ElementSet& h, std::size_t a, std::size_t b);
// Number of pairs (α, β) of orders (a, b) generating G, by Möbius inversion.
std::int64_t phi_ab(const SubgroupLattice& lat, const MobiusTable& mu, std::size_t a, std::size_t b);
// φ_{a,b}(G) / |Aut(G)|; throws InvariantViolation unless a nonnegative integer.
Rational Phi_ab(const SubgroupLattice& lat, const MobiusTable& mu, std::size_t a, std::size_t b,
                std::size_t aut_order);

struct ChiefSeriesReport {
  bool applicable = false;  // G solvable
  std::vector<SubgroupIndex> series;
  std::vector<char> complemented;  // per factor series[i-1] < series[i], i ≥ 1
  std::size_t d = 0;
};

ChiefSeriesReport chief_series(const SubgroupLattice& lat);
bool is_solvable(const FiniteGroup& g);
// Components of the comparability graph on proper nontrivial subgroups.
std::size_t subgroup_poset_components(const SubgroupLattice& lat);

// A maximal subgroup that is cyclic of prime-power order p^n, if any: (index, p).
std::optional<std::pair<SubgroupIndex, std::size_t>> cyclic_prime_power_maximal(const SubgroupLattice& lat);
bool is_cyclic_prime_power(const FiniteGroup& g);

}  // namespace ctopo

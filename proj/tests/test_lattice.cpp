#include <memory>
#include <set>

#include "coset_topo/errors.hpp"
#include "coset_topo/lattice.hpp"
#include "doctest.h"

using namespace ctopo;

namespace {

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

// Oracle: every subgroup of these small groups is generated by at most three
// elements, so closing every triple finds them all.
std::set<std::vector<Element>> brute_force_subgroups(const FiniteGroup& g) {
  std::set<std::vector<Element>> out;
  const Element n = static_cast<Element>(g.order());
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b)
      for (Element c = b; c < n; ++c) {
        const Element gens[3] = {a, b, c};
        out.insert(generated_subgroup(g, gens).elements());
      }
  return out;
}

std::int64_t mu_of_tag(const SubgroupLattice& lat, const MobiusTable& mu, const std::string& tag) {
  std::set<std::int64_t> values;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (type_tag(*lat.group, lat.subgroups[i]) == tag) values.insert(mu.mu[i]);
  REQUIRE(values.size() == 1);
  return *values.begin();
}

}  // namespace

TEST_CASE("lattice matches brute-force enumeration on small groups") {
  for (auto g : {share(make_symmetric(4)), share(make_quaternion()), share(make_dihedral(6)),
                 share(direct_product(make_cyclic(2), make_dihedral(2))), share(make_cyclic_semidirect(7, 3, 2))}) {
    const auto lat = enumerate_subgroups(g);
    std::set<std::vector<Element>> got;
    for (const auto& s : lat.subgroups) got.insert(s.elements());
    CHECK(got.size() == lat.size());
    CHECK(got == brute_force_subgroups(*g));
    CHECK(lat.order(0) == 1);
    CHECK(lat.order(lat.top()) == g->order());
  }
}

TEST_CASE("lattice structure invariants") {
  auto g = share(make_psl2(7));
  const auto lat = enumerate_subgroups(g);
  CHECK(lat.size() == 179);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    CHECK(generated_subgroup(*g, lat.subgroups[i]) == lat.subgroups[i]);
    CHECK(lat.leq(0, i));
    CHECK(lat.leq(i, lat.top()));
    // Normality against every element, not just generators.
    bool normal = true;
    for (Element x = 0; x < g->order() && normal; ++x)
      lat.subgroups[i].for_each([&](Element s) {
        if (!lat.subgroups[i].contains(g->conj(x, s))) normal = false;
      });
    CHECK(static_cast<bool>(lat.normal[i]) == normal);
    for (std::size_t j = 0; j < lat.size(); ++j) {
      CHECK(lat.leq(i, j) == lat.subgroups[i].is_subset_of(lat.subgroups[j]));
      ElementSet u = lat.subgroups[i] | lat.subgroups[j];
      CHECK(lat.index_of(generated_subgroup(*g, u)).has_value());
    }
  }
  for (Element x = 0; x < g->order(); ++x) {
    const Element one[1] = {x};
    CHECK(lat.index_of(generated_subgroup(*g, one)).has_value());
  }
}

TEST_CASE("small lattices") {
  for (std::size_t p : {2u, 3u, 5u, 7u}) CHECK(enumerate_subgroups(share(make_cyclic(p))).size() == 2);
  CHECK(enumerate_subgroups(share(make_cyclic(1))).size() == 1);
}

TEST_CASE("A5 maximal subgroups") {
  auto g = share(make_alternating(5));
  const auto lat = enumerate_subgroups(g);
  CHECK(lat.size() == 59);
  std::map<std::string, std::size_t> maximals;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.maximal[i]) ++maximals[type_tag(*g, lat.subgroups[i])];
  CHECK(maximals == std::map<std::string, std::size_t>{{"G12", 5}, {"D10", 6}, {"D6", 10}});
  const Element c5 = *g->find_label("(1 2 3 4 5)");
  const Element one[1] = {c5};
  CHECK(normalizer(*g, generated_subgroup(*g, one)).size() == 10);
  CHECK_FALSE(is_solvable(*g));
  const auto mu = mobius(lat);
  CHECK(prob_zeta(lat, mu, -1) == -1560);
}

TEST_CASE("PSL2(7) census, Mobius values and Eulerian counts") {
  auto g = share(make_psl2(7));
  const auto lat = enumerate_subgroups(g);
  const auto census = subgroup_census(lat);
  const std::map<std::string, std::size_t> expected{
      {"1", 1},   {"Z/2", 21}, {"Z/3", 28}, {"Z/4", 21},  {"D4", 14},  {"Z/7", 8},
      {"D6", 28}, {"D8", 21},  {"G12", 14}, {"G21", 8},   {"G24", 14}, {"G168", 1}};
  CHECK(census == expected);

  const auto mu = mobius(lat);
  CHECK(mu_of_tag(lat, mu, "G24") == -1);
  CHECK(mu_of_tag(lat, mu, "G21") == -1);
  CHECK(mu_of_tag(lat, mu, "D8") == 1);
  CHECK(mu_of_tag(lat, mu, "D6") == 1);
  CHECK(mu_of_tag(lat, mu, "Z/3") == 2);
  CHECK(mu_of_tag(lat, mu, "Z/2") == -4);
  for (const char* zero : {"Z/7", "Z/4", "D4", "G12", "1"}) CHECK(mu_of_tag(lat, mu, zero) == 0);

  CHECK(phi_ab(lat, mu, 2, 3) == 336);
  CHECK(phi_ab(lat, mu, 2, 4) == 336);
  CHECK(phi_ab(lat, mu, 2, 7) == 1008);
  CHECK(Phi_ab(lat, mu, 2, 3, 336) == 1);
  CHECK(Phi_ab(lat, mu, 2, 7, 336) == 3);
  CHECK_THROWS_AS(Phi_ab(lat, mu, 2, 3, 335), InvariantViolation);
  CHECK(prob_zeta(lat, mu, -1) == -2856);

  for (std::size_t i = 0; i < lat.size(); ++i)
    if (type_tag(*g, lat.subgroups[i]) == "Z/3") CHECK(normalizer(*g, lat.subgroups[i]).size() == 6);
}

TEST_CASE("Mobius invariants") {
  for (auto g : {share(make_psl2(7)), share(make_symmetric(4)), share(make_alternating(5)),
                 share(direct_product(make_cyclic(3), make_cyclic(9)))}) {
    const auto lat = enumerate_subgroups(g);
    const auto mu = mobius(lat);
    CHECK(mu.mu[lat.top()] == 1);
    for (std::size_t h = 0; h < lat.size(); ++h) {
      if (h != lat.top()) {
        std::int64_t s = 0;
        lat.above[h].for_each([&](Element k) { s += mu.mu[k]; });
        CHECK(s == 0);
      }
      CHECK(mobius_via_chains(lat, h) == mu.mu[h]);
      // Zero unless h is an intersection of maximal subgroups.
      ElementSet meet = g->all();
      for (std::size_t m = 0; m < lat.size(); ++m)
        if (lat.maximal[m] && lat.leq(h, m)) meet &= lat.subgroups[m];
      if (meet != lat.subgroups[h]) CHECK(mu.mu[h] == 0);
      for (std::size_t k = 0; k < lat.size(); ++k)
        if (lat.conj_class[k] == lat.conj_class[h]) CHECK(mu.mu[k] == mu.mu[h]);
    }
  }
}

TEST_CASE("Mobius on a chain lattice") {
  for (auto [p, n] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 5u}}) {
    std::size_t order = 1;
    for (unsigned i = 0; i < n; ++i) order *= p;
    const auto lat = enumerate_subgroups(share(make_cyclic(order)));
    const auto mu = mobius(lat);
    CHECK(lat.size() == n + 1);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const std::int64_t want = i == lat.top() ? 1 : (i + 1 == lat.top() ? -1 : 0);
      CHECK(mu.mu[i] == want);
    }
  }
}

TEST_CASE("probabilistic zeta of a prime cyclic group") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto lat = enumerate_subgroups(share(make_cyclic(p)));
    const auto mu = mobius(lat);
    CHECK(prob_zeta(lat, mu, -1) == 1 - p);
    CHECK(prob_zeta(lat, mu, 0) == 0);
    CHECK(prob_zeta(lat, mu, 2) == Rational(BigInt(p * p - 1), BigInt(p * p)));
  }
}

TEST_CASE("Eulerian inversion consistency") {
  for (auto g : {share(make_symmetric(4)), share(make_alternating(5)), share(make_quaternion())}) {
    const auto lat = enumerate_subgroups(g);
    const std::size_t e = exponent(*g);
    for (std::size_t a = 2; a <= e; ++a)
      for (std::size_t b = 2; b <= e; ++b) {
        std::int64_t total = 0;
        for (std::size_t h = 0; h < lat.size(); ++h) total += phi_ab(lat, interval_mobius(lat, h), a, b);
        CHECK(total == sigma_ab(*g, g->all(), a, b));
      }
  }
}

TEST_CASE("chief series") {
  for (std::size_t p : {2u, 3u, 5u}) {
    auto r = chief_series(enumerate_subgroups(share(make_cyclic(p))));
    CHECK(r.applicable);
    CHECK(r.d == 1);
    auto r2 = chief_series(enumerate_subgroups(share(make_cyclic(p * p))));
    CHECK(r2.d == 1);
    REQUIRE(r2.complemented.size() == 2);
    CHECK_FALSE(r2.complemented[0]);
    CHECK(r2.complemented[1]);
  }
  CHECK(chief_series(enumerate_subgroups(share(make_dihedral(2)))).d == 2);
  CHECK(chief_series(enumerate_subgroups(share(make_symmetric(4)))).d == 3);
  CHECK(chief_series(enumerate_subgroups(share(make_quaternion()))).d == 2);
  auto a5 = chief_series(enumerate_subgroups(share(make_alternating(5))));
  CHECK_FALSE(a5.applicable);
  auto s4 = enumerate_subgroups(share(make_symmetric(4)));
  auto r = chief_series(s4);
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    CHECK(s4.normal[r.series[i]]);
    if (i) CHECK(r.series[i - 1] < r.series[i]);
  }
}

TEST_CASE("subgroup poset components") {
  CHECK(subgroup_poset_components(enumerate_subgroups(share(make_cyclic(6)))) == 2);
  CHECK(subgroup_poset_components(enumerate_subgroups(share(make_cyclic(35)))) == 2);
  CHECK(subgroup_poset_components(enumerate_subgroups(share(make_quaternion()))) == 1);
  CHECK(subgroup_poset_components(enumerate_subgroups(share(make_cyclic(5)))) == 0);
}

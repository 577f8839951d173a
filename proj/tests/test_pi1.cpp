#include <memory>
#include <random>
#include <set>

#include "coset_topo/errors.hpp"
#include "coset_topo/pi1.hpp"
#include "doctest.h"

using namespace ctopo;

namespace {

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

Presentation pres(std::size_t n, std::vector<Word> rels) {
  Presentation p;
  p.num_generators = n;
  for (std::size_t i = 0; i < n; ++i) p.edges.emplace_back(0, static_cast<Vertex>(i + 1));
  p.relators = std::move(rels);
  return p;
}

}  // namespace

TEST_CASE("word reduction") {
  Word w{1, 2, -2, -1, 3};
  free_reduce(w);
  CHECK(w == Word{3});
  Word c{-1, 2, 3, 1};
  cyclic_reduce(c);
  CHECK(c == Word{2, 3});
}

TEST_CASE("edge-path presentations") {
  auto tree = complex_from_facets(4, {{0, 1}, {1, 2}, {1, 3}}, 2);
  auto p = edge_path_presentation(tree);
  CHECK(p.num_generators == 0);
  CHECK(p.relators.empty());

  auto circle = complex_from_facets(3, {{0, 1}, {1, 2}, {0, 2}}, 2);
  auto c = edge_path_presentation(circle);
  CHECK(c.tree == "star");
  CHECK(c.num_generators == 1);
  CHECK(c.relators.empty());
  CHECK(abelianize(c) == Abelianization{1, {}});

  auto disc = complex_from_facets(3, {{0, 1, 2}}, 2);
  CHECK(tietze_simplify(edge_path_presentation(disc)).trivial());

  auto two = complex_from_facets(4, {{0, 1}, {2, 3}}, 2);
  CHECK_THROWS_AS(edge_path_presentation(two), std::invalid_argument);

  // RP²: π₁ = Z/2.
  auto rp2 = complex_from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                     {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}}, 2);
  auto rp = edge_path_presentation(rp2);
  CHECK(rp.tree == "star");
  auto ab = abelianize(rp);
  CHECK(ab.rank == 0);
  CHECK(ab.torsion == std::vector<BigInt>{2});
  auto t = tietze_simplify(rp);
  CHECK_FALSE(t.trivial());
  CHECK(abelianize(t.presentation) == ab);
}

TEST_CASE("Tietze moves") {
  CHECK(tietze_simplify(pres(1, {{1}})).trivial());
  CHECK(tietze_simplify(pres(2, {{1, 2}, {2}})).trivial());
  auto free2 = tietze_simplify(pres(2, {}));
  CHECK(free2.presentation.num_generators == 2);
  // ⟨a, b | aba⁻¹b⁻¹⟩ stays Z².
  auto z2 = tietze_simplify(pres(2, {{1, 2, -1, -2}}));
  CHECK(abelianize(z2.presentation) == Abelianization{2, {}});
  // ⟨a, b | a b a, b³⟩: a = b⁻¹a⁻¹... eliminating b gives ⟨a | a⁻⁶⟩ up to form.
  auto p = pres(2, {{1, 2, 1}, {2, 2, 2}});
  auto t = tietze_simplify(p);
  CHECK(abelianize(t.presentation) == abelianize(p));
  CHECK(t.presentation.num_generators == 1);
  CHECK_THROWS_AS(tietze_simplify(pres(1, {{2}})), std::invalid_argument);
  // A budget of one step stops early.
  auto tight = tietze_simplify(pres(3, {{1}, {2}, {3}}), 1);
  CHECK(tight.exhausted);
  CHECK_FALSE(tight.trivial());
}

TEST_CASE("abelianization matches homology on random complexes") {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 5 + t % 4;
    std::vector<std::vector<Vertex>> facets;
    std::uniform_int_distribution<Vertex> v(0, static_cast<Vertex>(n - 1));
    for (Vertex i = 0; i + 1 < n; ++i) facets.push_back({i, i + 1});
    for (int f = 0; f < 6; ++f) {
      std::set<Vertex> s{v(rng), v(rng), v(rng)};
      facets.emplace_back(s.begin(), s.end());
    }
    auto k = complex_from_facets(n, facets, 2);
    auto h = reduced_homology(k, 1);
    auto p = edge_path_presentation(k);
    auto a = abelianize(p);
    CHECK(a.rank == h.betti(1));
    CHECK(a.torsion == h.torsion(1));
    auto s = tietze_simplify(p);
    CHECK(abelianize(s.presentation) == a);
  }
}

TEST_CASE("M(Q8) presentation") {
  auto lat = enumerate_subgroups(share(make_quaternion()));
  auto m2 = minimal_cover_skeleton(lat, 2);
  auto p = edge_path_presentation(m2, 0);
  CHECK(p.tree == "star");
  CHECK(abelianize(p).rank == 3);
  auto r = certify_simple_connectivity(lat);
  CHECK(r.status == CertStatus::nontrivial);
  CHECK(r.method == "homology");
  CHECK(*r.betti1 == 3);
}

TEST_CASE("two-generator condition") {
  auto a5 = enumerate_subgroups(share(make_alternating(5)));
  auto r = two_gen_condition_check(a5, 4);
  CHECK(r.pass);
  CHECK(r.pairs > 0);
  const MaximalCover cover(a5);
  const FiniteGroup& g = *a5.group;
  for (const auto& w : r.witnesses) {
    REQUIRE(w.z);
    CHECK(cover.generates(w.x, w.y));
    CHECK_FALSE(cover.generates(*w.z, w.x));
    CHECK_FALSE(cover.generates(*w.z, w.y));
    CHECK_FALSE(cover.generates(g.mul(*w.z, w.x), g.mul(*w.z, w.y)));
  }
  CHECK(two_gen_condition_check(a5, 1).witnesses.size() == r.witnesses.size());

  auto v4 = enumerate_subgroups(share(make_dihedral(2)));
  auto rv = two_gen_condition_check(v4);
  CHECK(rv.pairs > 0);
  CHECK_FALSE(rv.pass);
  CHECK(reduced_homology(order_complex(coset_poset(v4))).betti(1) > 0);

  // Any two elements of Z/p^2 x Z/p ... of (Z/2)^3 lie in a proper subgroup.
  auto e8 = enumerate_subgroups(share(direct_product(make_cyclic(2), make_dihedral(2))));
  auto re = two_gen_condition_check(e8);
  CHECK(re.vacuous);
  CHECK(re.pass);
  CHECK(reduced_homology(minimal_cover_skeleton(e8, 2), 1).betti(1) == 0);
}

TEST_CASE("order-two witnesses") {
  auto a5 = enumerate_subgroups(share(make_alternating(5)));
  const MaximalCover cover(a5);
  const FiniteGroup& g = *a5.group;
  const Element x = *g.find_label("(1 2 3)");
  auto w = order2_witness(cover, 0, x);
  REQUIRE(w.z);
  const auto tag = type_tag(g, a5.subgroups[*w.k]);
  CHECK((tag == "G12" || tag == "D10"));
  CHECK(element_order(g, *w.z) == 2);
  CHECK_THROWS_AS(order2_witness(cover, x, x), std::invalid_argument);

  auto sub = order_two_subcertificate(a5);
  CHECK(sub.covers_order_two());
  auto rep = order2_witness_check(a5, sub, 2);
  CHECK(rep.pass());
}

TEST_CASE("A5 certification") {
  auto lat = enumerate_subgroups(share(make_alternating(5)));
  CertifyOptions opt;
  opt.threads = 4;
  auto r = certify_simple_connectivity(lat, opt);
  CHECK(r.status == CertStatus::proven_trivial);
  CHECK(r.method == "two_gen");
  CHECK(*r.betti1 == 0);
  for (const auto& s : r.stages) MESSAGE(s.stage << ": " << s.result << " (" << s.detail << ")");
}

TEST_CASE("cyclic groups") {
  auto z4 = certify_simple_connectivity(enumerate_subgroups(share(make_cyclic(4))));
  CHECK(z4.status == CertStatus::nontrivial);
  CHECK(z4.method == "connectivity");
  auto z6 = certify_simple_connectivity(enumerate_subgroups(share(make_cyclic(6))));
  CHECK(z6.status == CertStatus::nontrivial);
  CHECK(*z6.betti1 == 2);
  auto z30 = certify_simple_connectivity(enumerate_subgroups(share(make_cyclic(30))));
  CHECK(*z30.betti1 == 0);
  CHECK(z30.status == CertStatus::proven_trivial);
  CHECK(z30.method == "tietze");
}

TEST_CASE("PSL2(7) certification") {
  auto lat = enumerate_subgroups(share(make_psl2(7)));
  CertifyOptions opt;
  opt.threads = 4;
  auto r = certify_simple_connectivity(lat, opt);
  CHECK(r.status == CertStatus::proven_trivial);
  CHECK(*r.betti1 == 0);
  REQUIRE(r.two_gen);
  CHECK_FALSE(r.two_gen->pass);
  REQUIRE(r.tietze);
  CHECK(r.tietze->trivial());
  REQUIRE(r.order2);
  CHECK(r.order2->pass());
  const FiniteGroup& g = *lat.group;
  for (const auto& w : r.order2->witnesses) {
    if (w.through_identity) continue;
    REQUIRE(w.z);
    const auto tag = type_tag(g, lat.subgroups[*w.k]);
    CHECK((tag == "G24" || tag == "G21"));
    CHECK(element_order(g, *w.z) == 2);
    CHECK(lat.subgroups[*w.k].contains(g.mul(g.inv(w.g), w.h)));
    CHECK(lat.subgroups[*w.k].contains(g.mul(g.inv(w.g), *w.z)));
  }
}

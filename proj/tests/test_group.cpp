#include <algorithm>
#include <map>
#include <random>

#include "coset_topo/errors.hpp"
#include "coset_topo/group.hpp"
#include "doctest.h"

using namespace ctopo;

namespace {

std::map<std::size_t, std::size_t> order_multiset(const FiniteGroup& g) {
  std::map<std::size_t, std::size_t> m;
  // Brute force: repeated multiplication until the identity.
  for (Element e = 0; e < g.order(); ++e) {
    std::size_t k = 1;
    Element x = e;
    while (x != 0) {
      x = g.mul(x, e);
      ++k;
    }
    ++m[k];
  }
  return m;
}

std::size_t center_size(const FiniteGroup& g) {
  std::size_t c = 0;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    c += central;
  }
  return c;
}

}  // namespace

TEST_CASE("cyclic groups") {
  CHECK(make_cyclic(1).order() == 1);
  auto z4 = make_cyclic(4);
  CHECK(element_order(z4, 1) == 4);
  CHECK(element_order(z4, 0) == 1);
  auto z6 = make_cyclic(6);
  auto z2z3 = direct_product(make_cyclic(2), make_cyclic(3));
  CHECK(order_multiset(z6) == order_multiset(z2z3));
  CHECK(order_multiset(z2z3).count(6) == 1);
}

TEST_CASE("dihedral groups") {
  auto v4 = make_dihedral(2);
  CHECK(order_multiset(v4) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}});
  auto d6 = make_dihedral(3);
  CHECK(d6.order() == 6);
  CHECK(order_multiset(d6) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}, {3, 2}});
  auto d8 = make_dihedral(4);
  CHECK(center_size(d8) == 2);
  for (std::size_t n = 2; n <= 12; ++n) {
    auto d = make_dihedral(n);
    for (Element e = static_cast<Element>(n); e < 2 * n; ++e) CHECK(element_order(d, e) == 2);
  }
}

TEST_CASE("quaternion group") {
  auto q = make_quaternion();
  CHECK(q.order() == 8);
  CHECK(order_multiset(q) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {4, 6}});
  const Element i = *q.find_label("i"), j = *q.find_label("j"), k = *q.find_label("k");
  const Element mk = *q.find_label("-k");
  CHECK(q.mul(i, j) == k);
  CHECK(q.mul(j, i) == mk);
}

TEST_CASE("permutation groups") {
  auto a5 = make_alternating(5);
  CHECK(a5.order() == 60);
  CHECK(make_symmetric(4).order() == 24);
  CHECK(order_multiset(a5) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 15}, {3, 20}, {5, 24}});
  const Element c5 = *a5.find_label("(1 2 3 4 5)");
  const Element one[1] = {c5};
  CHECK(generated_subgroup(a5, one).size() == 5);
  CHECK_THROWS_AS(make_symmetric(9), GroupError);
}

TEST_CASE("semidirect products") {
  auto z7z3 = make_cyclic_semidirect(7, 3, 2);
  CHECK(z7z3.order() == 21);
  CHECK_FALSE(is_abelian(z7z3));
  for (std::size_t n = 3; n <= 8; ++n)
    CHECK(order_multiset(make_cyclic_semidirect(n, 2, n - 1)) == order_multiset(make_dihedral(n)));
  auto triv = make_cyclic_semidirect(5, 2, 1);
  CHECK(is_abelian(triv));
  CHECK(order_multiset(triv) == order_multiset(make_cyclic(10)));
  // x ↦ 3x does not have order dividing 3 in Aut(ℤ/7).
  CHECK_THROWS_AS(make_cyclic_semidirect(7, 3, 3), GroupError);
  auto z3z9 = direct_product(make_cyclic(3), make_cyclic(9));
  CHECK(z3z9.order() == 27);
  CHECK(exponent(z3z9) == 9);
}

TEST_CASE("PSL2 orders and the trace-squared table") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) CHECK(make_psl2(p).order() == p * (p * p - 1) / 2);
  CHECK_THROWS_AS(make_psl2(9), GroupError);
  CHECK_THROWS_AS(make_psl2(17), GroupError);
  auto g = make_psl2(7);
  CHECK(element_order(g, psl2_element(g, 7, 1, 1, 0, 1)) == 7);
  const std::map<std::uint32_t, std::size_t> table{{0, 2}, {1, 3}, {2, 4}, {4, 7}};
  for (Element e = 1; e < g.order(); ++e) {
    const auto t = psl2_trace_squared(g, 7, e);
    REQUIRE(table.count(t));
    CHECK(element_order(g, e) == table.at(t));
  }
}

TEST_CASE("corrupted tables are rejected") {
  auto z3 = make_cyclic(3);
  std::vector<std::vector<std::uint32_t>> rows{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  CHECK(make_from_table(rows, "ok").order() == 3);
  // Latin but not associative: a loop of order 5.
  std::vector<std::vector<std::uint32_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(make_from_table(loop, "loop"), InvariantViolation);
  rows[1][1] = 1;
  CHECK_THROWS_AS(make_from_table(rows, "bad"), InvariantViolation);
}

TEST_CASE("element order is invariant under swapping factors") {
  auto g = make_symmetric(4);
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) CHECK(element_order(g, g.mul(a, b)) == element_order(g, g.mul(b, a)));
}

TEST_CASE("generated_subgroup properties") {
  auto g = make_psl2(7);
  CHECK(generated_subgroup(g, g.empty_set()).size() == 1);
  std::mt19937 rng(7);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
  for (int trial = 0; trial < 200; ++trial) {
    ElementSet seed(g.order());
    const int k = trial % 3 + 1;
    for (int i = 0; i < k; ++i) seed.insert(pick(rng));
    const ElementSet h = generated_subgroup(g, seed);
    CHECK(g.order() % h.size() == 0);
    CHECK(generated_subgroup(g, h) == h);
    CHECK(seed.is_subset_of(h));
    ElementSet bigger = seed;
    bigger.insert(pick(rng));
    CHECK(h.is_subset_of(generated_subgroup(g, bigger)));
    // Extending a subgroup agrees with generating from scratch.
    const Element extra[1] = {pick(rng)};
    ElementSet both = h;
    both.insert(extra[0]);
    CHECK(extend_subgroup(g, h, extra) == generated_subgroup(g, both));
  }
}

TEST_CASE("coset_generates_proper") {
  auto q = make_quaternion();
  const Element one[1] = {3};
  CHECK(coset_generates_proper(q, one));
  const Element four[4] = {*q.find_label("i"), *q.find_label("-i"), *q.find_label("j"), *q.find_label("-j")};
  // {±i, ±j} is the coset i⟨k⟩.
  CHECK(coset_generates_proper(q, four));
  const Element gen3[3] = {0, *q.find_label("i"), *q.find_label("j")};
  CHECK_FALSE(coset_generates_proper(q, gen3));

  auto a5 = make_alternating(5);
  for (Element x = 0; x < 60; ++x)
    for (Element y = x + 1; y < 60; ++y) {
      const Element pair[2] = {x, y};
      CHECK(coset_generates_proper(a5, pair));
    }

  // Left translation and automorphism invariance on S₄ triples.
  auto s4 = make_symmetric(4);
  const auto autos = automorphisms(s4);
  std::mt19937 rng(3);
  std::uniform_int_distribution<Element> pick(0, 23);
  for (int t = 0; t < 300; ++t) {
    const Element tri[3] = {pick(rng), pick(rng), pick(rng)};
    const bool base = coset_generates_proper(s4, tri);
    const Element z = pick(rng);
    const Element moved[3] = {s4.mul(z, tri[0]), s4.mul(z, tri[1]), s4.mul(z, tri[2])};
    CHECK(coset_generates_proper(s4, moved) == base);
    const auto& phi = autos[t % autos.size()];
    const Element img[3] = {phi[tri[0]], phi[tri[1]], phi[tri[2]]};
    CHECK(coset_generates_proper(s4, img) == base);
  }
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(make_cyclic(7)) == 6);
  CHECK(automorphism_count(make_dihedral(2)) == 6);
  CHECK(automorphism_count(make_symmetric(3)) == 6);
  CHECK(automorphism_count(make_quaternion()) == 24);
  CHECK(automorphism_count(make_alternating(5)) == 120);
  CHECK(automorphism_count(make_psl2(7)) == 336);
}

#include <memory>
#include <random>

#include "coset_topo/errors.hpp"
#include "coset_topo/homology.hpp"
#include "doctest.h"

using namespace ctopo;

namespace {

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

SimplicialComplex from_facets(std::size_t n, std::vector<std::vector<Vertex>> f) {
  return complex_from_facets(n, f, std::nullopt);
}

std::vector<std::vector<BigInt>> mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<BigInt>> m;
  for (auto r : rows) {
    m.emplace_back();
    for (int v : r) m.back().emplace_back(v);
  }
  return m;
}

std::vector<std::vector<BigInt>> mul(const std::vector<std::vector<BigInt>>& a, const std::vector<std::vector<BigInt>>& b) {
  std::vector<std::vector<BigInt>> c(a.size(), std::vector<BigInt>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Product of random elementary moves, so determinant ±1.
std::vector<std::vector<BigInt>> random_unimodular(std::size_t n, std::mt19937& rng) {
  std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-3, 3);
  for (int t = 0; t < 30; ++t) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u[i][k] += c * u[j][k];
  }
  return u;
}

}  // namespace

TEST_CASE("Smith normal form oracles") {
  auto id = smith_normal_form(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(id.factors == std::vector<BigInt>{1, 1, 1});
  auto d = smith_normal_form(mat({{2, 0}, {0, 3}}));
  CHECK(d.factors == std::vector<BigInt>{1, 6});
  CHECK(smith_normal_form(mat({{0, 0}, {0, 0}})).rank == 0);
  CHECK(smith_normal_form({}).rank == 0);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<BigInt>> diag(6, std::vector<BigInt>(6));
    diag[0][0] = 1, diag[1][1] = 2, diag[2][2] = 6;
    auto m = mul(mul(random_unimodular(6, rng), diag), random_unimodular(6, rng));
    auto r = smith_normal_form(m);
    CHECK(r.rank == 3);
    CHECK(r.factors == std::vector<BigInt>{1, 2, 6});
  }
}

TEST_CASE("boundary matrices of small complexes") {
  auto edge = from_facets(2, {{0, 1}});
  auto b = boundary_matrices(edge, 0);
  REQUIRE(b.size() == 2);
  CHECK(b[1].rows == 2);
  CHECK(b[1].cols == 1);
  CHECK(b[1].row == std::vector<std::uint32_t>{0, 1});
  CHECK(b[1].val == std::vector<std::int8_t>{-1, 1});

  auto circle = from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(rank_mod_p(boundary_matrices(circle, 0)[1]) == 2);
  CHECK(integer_reduce(boundary_matrices(circle, 0)[1]).rank == 2);
  auto h = reduced_homology(circle);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 1);
  CHECK(h.betti(-1) == 0);
  CHECK(*h.euler_reduced == -1);

  auto point = SimplicialComplex(1);
  CHECK(euler_characteristic(point) == 0);
  CHECK(reduced_homology(point).betti(0) == 0);
  auto empty = SimplicialComplex(0);
  CHECK(reduced_homology(empty).betti(-1) == 1);

  SimplicialComplex trunc = complex_from_facets(4, {{0, 1, 2, 3}}, 1);
  CHECK_THROWS_AS(boundary_matrices(trunc, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduced_homology(trunc, 1), std::invalid_argument);
  CHECK(reduced_homology(trunc, 0).betti(0) == 0);
}

TEST_CASE("torsion: projective plane") {
  // Six-vertex triangulation of RP².
  auto rp2 = from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                             {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
  CHECK(rp2.f_vector() == std::vector<std::size_t>{6, 15, 10});
  auto h = reduced_homology(rp2);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 0);
  CHECK(h.betti(2) == 0);
  CHECK(h.torsion(1) == std::vector<BigInt>{2});
  CHECK(h.torsion(0).empty());
  CHECK_FALSE(h.torsion_free());
  CHECK(*h.euler_reduced == 0);
}

TEST_CASE("Q8 coset poset") {
  auto lat = enumerate_subgroups(share(make_quaternion()));
  auto delta = order_complex(coset_poset(lat));
  CHECK(delta.f_vector() == std::vector<std::size_t>{18, 44, 24});
  auto b = boundary_matrices(delta, 1);
  CHECK(b[1].rows == 18);
  CHECK(b[1].cols == 44);
  CHECK(b[2].rows == 44);
  CHECK(b[2].cols == 24);
  auto h = reduced_homology(delta);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 3);
  CHECK(h.betti(2) == 0);
  CHECK(h.torsion_free());
}

TEST_CASE("A5 coset poset") {
  auto lat = enumerate_subgroups(share(make_alternating(5)));
  auto p = coset_poset(lat);
  CHECK(p.size() == 1018);
  auto chains = euler_characteristic_poset(p);
  CHECK(chains.euler_reduced == 1560);
  auto delta = order_complex(p);
  CHECK(delta.dimension() == 3);
  CHECK(euler_characteristic(delta) == 1560);
  auto h = reduced_homology(delta);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 0);
  CHECK(h.betti(2) == 1560);
  CHECK(h.betti(3) == 0);
  CHECK(h.torsion_free());
}

TEST_CASE("C(Z/q x Z/p) has rank (p-1)(q-1) in degree one") {
  for (auto [q, p] : {std::pair{2u, 3u}, std::pair{2u, 5u}, std::pair{3u, 5u}}) {
    auto lat = enumerate_subgroups(share(make_cyclic(p * q)));
    auto h = reduced_homology(order_complex(coset_poset(lat)));
    CHECK(h.betti(1) == static_cast<std::int64_t>((p - 1) * (q - 1)));
  }
  // Z/q x Z/p^n.
  auto lat = enumerate_subgroups(share(make_cyclic(2 * 9)));
  CHECK(reduced_homology(order_complex(coset_poset(lat))).betti(1) == 2);
}

TEST_CASE("PSL2(7) chain count") {
  auto lat = enumerate_subgroups(share(make_psl2(7)));
  CHECK(euler_characteristic_poset(coset_poset(lat)).euler_reduced == 2856);
}

TEST_CASE("chain counts agree with enumeration") {
  for (auto g : {share(make_symmetric(4)), share(make_dihedral(6)), share(make_cyclic(12))}) {
    auto p = coset_poset(enumerate_subgroups(g));
    auto counts = euler_characteristic_poset(p);
    auto delta = order_complex(p);
    REQUIRE(counts.by_length.size() == delta.f_vector().size());
    for (std::size_t l = 0; l < counts.by_length.size(); ++l)
      CHECK(counts.by_length[l] == static_cast<std::int64_t>(delta.count(static_cast<int>(l))));
    CHECK(counts.euler_reduced == euler_characteristic(delta));
  }
  CHECK(euler_characteristic_poset(chain_poset(1)).euler_reduced == 0);
}

TEST_CASE("subdivision preserves homology") {
  auto rp2 = from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                             {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
  auto a = reduced_homology(rp2), b = reduced_homology(barycentric_subdivision(rp2));
  for (int k = -1; k <= 2; ++k) {
    CHECK(a.betti(k) == b.betti(k));
    CHECK(a.torsion(k) == b.torsion(k));
  }
}

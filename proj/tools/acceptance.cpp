#include "acceptance.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "coset_topo/errors.hpp"
#include "coset_topo/homology.hpp"
#include "coset_topo/lattice.hpp"
#include "coset_topo/pi1.hpp"
#include "coset_topo/recipe.hpp"
#include "coset_topo/topo.hpp"

#ifndef CTOPO_CATALOG_DIR
#define CTOPO_CATALOG_DIR "catalog"
#endif

namespace ctopo::cli {

using nlohmann::json;

std::string default_catalog_dir() { return CTOPO_CATALOG_DIR; }

std::vector<CatalogEntry> load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ParseError("catalog: not a directory: " + dir);
  std::vector<CatalogEntry> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    json j = read_json_file(e.path().string());
    if (!j.is_object() || !j.contains("recipe")) throw ParseError("catalog: " + e.path().string() + " has no 'recipe'");
    out.push_back({e.path().stem().string(), j.value("name", e.path().stem().string()), j.at("recipe")});
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.file < b.file; });
  return out;
}

namespace {

// Collects failures; a criterion passes when nothing was recorded.
class Checker {
 public:
  template <class A, class B>
  void eq(const std::string& what, const A& got, const B& want) {
    if (!(got == want)) fail(what + ": got " + show(got) + ", expected " + show(want));
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  void fail(const std::string& s) { failures_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + ("FAIL " + f);
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  template <class T>
  static std::string show(const T& v) {
    if constexpr (std::is_same_v<T, std::vector<std::size_t>> || std::is_same_v<T, std::vector<std::int64_t>>) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + ")";
    } else if constexpr (std::is_same_v<T, std::string> || std::is_convertible_v<T, const char*>) {
      return std::string(v);
    } else if constexpr (std::is_same_v<T, Rational>) {
      return to_fraction_string(v);
    } else if constexpr (std::is_same_v<T, bool>) {
      return v ? "true" : "false";
    } else {
      std::ostringstream o;
      o << v;
      return o.str();
    }
  }
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Context {
  std::map<std::string, CatalogEntry> by_file;
  std::vector<CatalogEntry> all;
  unsigned threads = 1;

  SubgroupLattice lattice(const std::string& file) const {
    auto it = by_file.find(file);
    if (it == by_file.end()) throw ParseError("catalog entry missing: " + file + ".json");
    return enumerate_subgroups(build_group_ptr(it->second.recipe));
  }
};

std::vector<std::int64_t> betti_vector(const HomologyProfile& h, int lo, int hi) {
  std::vector<std::int64_t> v;
  for (int k = lo; k <= hi; ++k) v.push_back(h.betti(k));
  return v;
}

std::vector<char> mask_of_tags(const SubgroupLattice& lat, std::initializer_list<const char*> tags) {
  std::vector<char> m(lat.size(), 0);
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (const char* t : tags)
      if (type_tag(*lat.group, lat.subgroups[i]) == t) m[i] = 1;
  return m;
}

std::vector<Vertex> cosets_with_tags(const SubgroupLattice& lat, const Poset& p, std::initializer_list<const char*> tags) {
  return cosets_of(p, mask_of_tags(lat, tags));
}

// p if n = p^k with k >= 1, else 0.
std::size_t prime_power_base(std::size_t n) {
  std::size_t p = 2;
  while (p <= n && n % p) ++p;
  if (p > n) return 0;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

bool is_cyclic_subgroup(const FiniteGroup& g, const ElementSet& h) {
  for (Element x : h.elements())
    if (element_order(g, x) == h.size()) return true;
  return false;
}

std::int64_t chi_coset(const SubgroupLattice& lat) { return euler_characteristic_poset(coset_poset(lat)).euler_reduced; }

std::int64_t zeta_minus_one(const SubgroupLattice& lat) {
  const Rational p = prob_zeta(lat, mobius(lat), -1);
  if (boost::multiprecision::denominator(p) != 1) throw InvariantViolation("P(G,-1) is not an integer");
  return static_cast<std::int64_t>(boost::multiprecision::numerator(p));
}

std::map<std::string, std::int64_t> mu_by_tag(const SubgroupLattice& lat, const MobiusTable& mu, Checker& c) {
  std::map<std::string, std::int64_t> out;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const std::string t = type_tag(*lat.group, lat.subgroups[i]);
    auto [it, fresh] = out.emplace(t, mu.mu[i]);
    if (!fresh && it->second != mu.mu[i]) c.fail("mu not constant on type " + t);
  }
  return out;
}

void criterion1(const Context& ctx, Checker& c) {
  const auto lat = ctx.lattice("q8");
  const auto d = order_complex(coset_poset(lat));
  c.eq("f-vector of Delta(C(Q8))", d.f_vector(), std::vector<std::size_t>{18, 44, 24});
  const auto h = reduced_homology(d);
  c.eq("betti", betti_vector(h, 0, 2), std::vector<std::int64_t>{0, 3, 0});
  c.expect(h.torsion_free(), "Delta(C(Q8)) has torsion");
  const auto pr = crosscut_prime_complex(lat);
  c.eq("f-vector of Pr(Q8)", pr.complex.f_vector(), std::vector<std::size_t>{4, 6});
  c.eq("betti1 of Pr(Q8)", reduced_homology(pr.complex).betti(1), 3);
}

void criterion2(const Context& ctx, Checker& c) {
  const auto lat = ctx.lattice("a5");
  const auto poset = coset_poset(lat);
  c.eq("proper cosets", poset.size(), 1018u);
  std::map<std::string, std::size_t> maximal;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.maximal[i]) ++maximal[type_tag(*lat.group, lat.subgroups[i])];
  const std::map<std::string, std::size_t> want{{"D10", 6}, {"D6", 10}, {"G12", 5}};
  c.expect(maximal == want, "maximal census differs from 5 A4, 6 D10, 10 S3");
  const auto h = reduced_homology(order_complex(poset));
  c.eq("betti", betti_vector(h, 0, 3), std::vector<std::int64_t>{0, 0, 1560, 0});
  c.expect(h.torsion_free(), "torsion in Delta(C(A5))");
  const auto chi = euler_characteristic_poset(poset).euler_reduced;
  c.eq("chain-count chi", chi, 1560);
  const auto p = zeta_minus_one(lat);
  c.eq("P(A5,-1) = -chi", p, -chi);
  c.note("P(A5,-1) = " + std::to_string(p));
  CertifyOptions opt;
  opt.threads = ctx.threads;
  const auto r = certify_simple_connectivity(lat, opt);
  c.eq("certification", to_string(r.status), "Proven-trivial");
  c.eq("method", r.method, "two_gen");
}

void criterion3(const Context& ctx, Checker& c) {
  const auto lat = ctx.lattice("psl2_7");
  const FiniteGroup& g = *lat.group;
  c.eq("order", g.order(), 168u);
  const std::map<std::string, std::size_t> census_want{
      {"1", 1},   {"Z/2", 21}, {"Z/3", 28}, {"Z/4", 21},  {"D4", 14},  {"Z/7", 8},
      {"D6", 28}, {"D8", 21},  {"G12", 14}, {"G21", 8},   {"G24", 14}, {"G168", 1}};
  c.expect(subgroup_census(lat) == census_want, "subgroup census");
  const auto mu = mobius(lat);
  const std::map<std::string, std::int64_t> mu_want{
      {"1", 0},   {"Z/2", -4}, {"Z/3", 2}, {"Z/4", 0},  {"D4", 0},   {"Z/7", 0},
      {"D6", 1},  {"D8", 1},   {"G12", 0}, {"G21", -1}, {"G24", -1}, {"G168", 1}};
  c.expect(mu_by_tag(lat, mu, c) == mu_want, "Mobius table");
  std::int64_t weighted_z2 = 0;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.order(i) == 2) weighted_z2 += mu.mu[i];
  c.eq("sum of mu over subgroups of order 2", weighted_z2, -84);
  c.eq("phi_{2,3}", phi_ab(lat, mu, 2, 3), 336);
  c.eq("phi_{2,4}", phi_ab(lat, mu, 2, 4), 336);
  c.eq("Phi_{2,7}", Phi_ab(lat, mu, 2, 7, 336), Rational(3));
  const auto aut = automorphism_count(g);
  c.eq("|Aut|", aut, 336u);
  const auto p = zeta_minus_one(lat);
  const auto poset = coset_poset(lat);
  const auto chi = euler_characteristic_poset(poset).euler_reduced;
  c.eq("|P(G,-1)|", p < 0 ? -p : p, 2856);
  c.eq("P(G,-1) = -chi", p, -chi);
  c.note("P(G,-1) = " + std::to_string(p));
  CertifyOptions opt;
  opt.threads = ctx.threads;
  const auto r = certify_simple_connectivity(lat, opt);
  c.expect(r.betti1.has_value(), "betti1 of M(G)^2 not computed");
  if (r.betti1) c.eq("betti1 of M(G)^2", *r.betti1, 0);
  c.eq("certification", to_string(r.status), "Proven-trivial");
  c.note("method " + r.method);

  // Informational only.
  try {
    auto s1 = prune_with_cone_fibers(poset, cosets_with_tags(lat, poset, {"Z/4", "D4"}));
    auto s2 = prune_with_cone_fibers(s1.poset, cosets_with_tags(lat, s1.poset, {"G12"}));
    auto s3 = prune_with_cone_fibers(s2.poset, cosets_with_tags(lat, s2.poset, {"Z/7"}));
    const auto k = order_complex(s3.poset, 3, 20'000'000);
    const auto h = reduced_homology(k, 2);
    std::string t;
    for (const auto& x : h.torsion(2)) t += " Z/" + x.str();
    c.note("pruned model: " + std::to_string(s3.poset.size()) + " cosets, H2 rank " + std::to_string(h.betti(2)) +
           (t.empty() ? "" : ", torsion" + t));
  } catch (const std::exception& e) {
    c.note(std::string("pruned model H2 not computed: ") + e.what());
  }
}

void criterion4(const Context& ctx, Checker& c) {
  std::size_t checked = 0;
  for (const auto& e : ctx.all) {
    const auto g = build_group_ptr(e.recipe);
    if (g->order() > 48 || !is_solvable(*g)) continue;
    const auto lat = enumerate_subgroups(g);
    const auto cs = chief_series(lat);
    const int d = static_cast<int>(cs.d);
    auto concentrated = [&](const SimplicialComplex& k, std::int64_t chi, int degree, const char* what) {
      const auto h = reduced_homology(k);
      if (!h.torsion_free()) c.fail(e.file + " " + what + ": torsion");
      for (const auto& dh : h.degrees) {
        const std::int64_t want = dh.k == degree ? (chi < 0 ? -chi : chi) : 0;
        if (dh.betti != want)
          c.fail(e.file + " " + what + ": betti_" + std::to_string(dh.k) + " = " + std::to_string(dh.betti) +
                 ", expected " + std::to_string(want));
      }
      if (h.degrees.back().k < degree && chi != 0) c.fail(e.file + " " + what + ": degree beyond dimension");
    };
    const auto cp = coset_poset(lat);
    concentrated(order_complex(cp), euler_characteristic_poset(cp).euler_reduced, d - 1, "C(G)");
    const auto sp = subgroup_poset(lat);
    concentrated(order_complex(sp), euler_characteristic_poset(sp).euler_reduced, d - 2, "S(G)");
    ++checked;
  }
  c.expect(checked >= 20, "fewer than 20 solvable catalog groups of order <= 48");
  c.note(std::to_string(checked) + " groups");
}

void criterion5(const Context& ctx, Checker& c) {
  // Every maximal subgroup that is cyclic of prime-power order gives a bound.
  for (const char* f : {"q8", "d8", "z7_z3"}) {
    const auto lat = ctx.lattice(f);
    const auto b1 = reduced_homology(order_complex(coset_poset(lat), 2), 1).betti(1);
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      if (!lat.maximal[i] || !seen.insert(lat.order(i)).second) continue;
      const std::size_t p = prime_power_base(lat.order(i));
      if (p == 0 || !is_cyclic_subgroup(*lat.group, lat.subgroups[i])) continue;
      const auto bound = static_cast<std::int64_t>((p - 1) * (lat.group->order() / lat.order(i)));
      const std::string tag = type_tag(*lat.group, lat.subgroups[i]);
      c.expect(b1 >= bound, std::string(f) + " M=" + tag + ": betti1 " + std::to_string(b1) + " < " + std::to_string(bound));
      c.note(std::string(f) + " M=" + tag + " " + std::to_string(b1) + ">=" + std::to_string(bound));
    }
  }
  for (const char* f : {"z6", "z10", "z14", "z15", "z21", "z35"}) {
    const auto lat = ctx.lattice(f);
    const auto n = static_cast<std::int64_t>(subgroup_poset_components(lat));
    const auto b1 = reduced_homology(order_complex(coset_poset(lat), 2), 1).betti(1);
    c.expect(b1 >= n - 1, std::string(f) + ": betti1 " + std::to_string(b1) + " < " + std::to_string(n - 1));
    c.note(std::string(f) + " " + std::to_string(b1) + ">=" + std::to_string(n - 1));
  }
}

void criterion6(const Context& ctx, Checker& c) {
  std::size_t checked = 0;
  for (const auto& e : ctx.all) {
    const auto g = build_group_ptr(e.recipe);
    if (g->order() > 12) continue;
    const auto lat = enumerate_subgroups(g);
    const auto delta = order_complex(coset_poset(lat));
    const std::vector<std::pair<const char*, SimplicialComplex>> models{
        {"delta", delta},
        {"mcover", minimal_cover_skeleton(lat, std::nullopt)},
        {"crosscut", crosscut_prime_complex(lat).complex},
        {"sd", barycentric_subdivision(delta)}};
    int top = 0;
    std::vector<HomologyProfile> hs;
    for (const auto& [_, k] : models) {
      hs.push_back(reduced_homology(k));
      top = std::max(top, k.dimension());
    }
    const auto ref = betti_vector(hs[0], -1, top);
    for (std::size_t i = 1; i < models.size(); ++i)
      if (betti_vector(hs[i], -1, top) != ref) c.fail(e.file + ": " + models[i].first + " differs from delta");
    for (std::size_t i = 0; i < models.size(); ++i)
      if (!hs[i].torsion_free()) c.fail(e.file + ": torsion in " + models[i].first);
    ++checked;
  }
  c.note(std::to_string(checked) + " groups");
}

void criterion7(const Context& ctx, Checker& c) {
  std::size_t checked = 0;
  for (const auto& e : ctx.all) {
    const auto g = build_group_ptr(e.recipe);
    if (g->order() > 60) continue;
    const auto lat = enumerate_subgroups(g);
    const auto p = zeta_minus_one(lat);
    const auto chi = chi_coset(lat);
    if (p != -chi) c.fail(e.file + ": P(G,-1) = " + std::to_string(p) + ", chi~ = " + std::to_string(chi));
    ++checked;
  }
  c.note(std::to_string(checked) + " groups, P(G,-1) = -chi~ in each");
}

void criterion8(const Context& ctx, Checker& c) {
  struct Case {
    const char* name;
    json a, b;
  };
  const json z2 = {{"kind", "cyclic"}, {"n", 2}}, z3 = {{"kind", "cyclic"}, {"n", 3}},
             z4 = {{"kind", "cyclic"}, {"n", 4}}, s3 = {{"kind", "symmetric"}, {"n", 3}};
  const std::vector<Case> cases{{"Z/2xZ/2", z2, z2}, {"Z/2xZ/3", z2, z3}, {"S3xZ/2", s3, z2}, {"Z/4xZ/2", z4, z2}};
  for (const auto& cs : cases) {
    const auto ga = build_group(cs.a), gb = build_group(cs.b);
    const bool predicted = !(is_cyclic_prime_power(ga) && is_cyclic_prime_power(gb));
    const auto lat = enumerate_subgroups(build_group_ptr(json{{"kind", "product"}, {"factors", {cs.a, cs.b}}}));
    const auto b1 = reduced_homology(order_complex(coset_poset(lat), 2), 1).betti(1);
    CertifyOptions opt;
    opt.threads = ctx.threads;
    const auto r = certify_simple_connectivity(lat, opt);
    const bool h1_verdict = b1 == 0;
    c.expect(h1_verdict == predicted, std::string(cs.name) + ": betti1 " + std::to_string(b1) + " against prediction " +
                                          (predicted ? "s.c." : "not s.c."));
    const bool contradiction = (predicted && r.status == CertStatus::nontrivial) ||
                               (!predicted && r.status == CertStatus::proven_trivial);
    c.expect(!contradiction, std::string(cs.name) + ": certification " + to_string(r.status));
    c.note(std::string(cs.name) + " b1=" + std::to_string(b1) + " " + to_string(r.status));
  }
}

void criterion9(const Context& ctx, Checker& c) {
  (void)ctx;
  const std::vector<std::pair<const char*, json>> factors{{"Z/2", {{"kind", "cyclic"}, {"n", 2}}},
                                                          {"Z/3", {{"kind", "cyclic"}, {"n", 3}}},
                                                          {"Z/4", {{"kind", "cyclic"}, {"n", 4}}},
                                                          {"S3", {{"kind", "symmetric"}, {"n", 3}}}};
  std::vector<std::int64_t> chi;
  for (const auto& [_, r] : factors) chi.push_back(chi_coset(enumerate_subgroups(build_group_ptr(r))));
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const auto lat =
          enumerate_subgroups(build_group_ptr(json{{"kind", "product"}, {"factors", {factors[i].second, factors[j].second}}}));
      const auto c0 = nonsaturating_subposet(coset_poset(lat), lat, ProductMode::direct);
      const auto got = euler_characteristic_poset(c0).euler_reduced;
      if (got != -chi[i] * chi[j])
        c.fail(std::string(factors[i].first) + "x" + factors[j].first + ": " + std::to_string(got) + " != " +
               std::to_string(-chi[i] * chi[j]));
    }
  const auto g = build_group_ptr(json{{"kind", "semidirect"}, {"n", 7}, {"m", 3}, {"r", 2}});
  const auto lat = enumerate_subgroups(g);
  const auto& ps = *g->product();
  const auto x = euler_characteristic_poset(invariant_coset_poset(enumerate_subgroups(ps.normal), ps.action)).euler_reduced;
  const auto y = chi_coset(enumerate_subgroups(ps.complement));
  const auto got = euler_characteristic_poset(nonsaturating_subposet(coset_poset(lat), lat, ProductMode::semidirect)).euler_reduced;
  c.eq("Z/7:Z/3 join identity", got, -x * y);
  c.note("Z/7:Z/3: " + std::to_string(got) + " = -(" + std::to_string(x) + ")(" + std::to_string(y) + ")");
}

void criterion10(const Context& ctx, Checker& c) {
  const auto lat = ctx.lattice("psl2_7");
  const FiniteGroup& g = *lat.group;
  const std::map<std::uint32_t, std::size_t> table{{0, 2}, {1, 3}, {2, 4}, {4, 7}};
  const auto orders = element_orders(g);
  for (Element e = 1; e < g.order(); ++e) {
    const auto t = psl2_trace_squared(g, 7, e);
    auto it = table.find(t);
    if (it == table.end() || it->second != orders[e])
      c.fail("element " + g.element_label(e) + ": tr^2 " + std::to_string(t) + ", order " + std::to_string(orders[e]));
  }
  std::size_t pairs = 0, generating = 0;
  for (Element a = 1; a < g.order(); ++a) {
    if (orders[a] != 2) continue;
    for (Element b = 1; b < g.order(); ++b) {
      if (orders[b] != 3) continue;
      ++pairs;
      const Element ab[] = {a, b};
      const bool gen = generates(g, ab);
      generating += gen;
      if (gen != (orders[g.mul(a, b)] == 7))
        c.fail("pair " + g.element_label(a) + ", " + g.element_label(b) + " breaks <g,h> = G iff o(gh) = 7");
    }
  }
  c.eq("(2,3) pairs", pairs, 21u * 56u);
  c.note(std::to_string(generating) + "/" + std::to_string(pairs) + " pairs generate");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& catalog_dir, unsigned threads) {
  Context ctx;
  ctx.threads = threads;
  ctx.all = load_catalog(catalog_dir);
  for (const auto& e : ctx.all) ctx.by_file[e.file] = e;

  const std::vector<std::pair<const char*, std::function<void(const Context&, Checker&)>>> criteria{
      {"Q8 coset complex and cross-cut complex", criterion1},
      {"A5 cosets, census, homology, zeta, certification", criterion2},
      {"PSL2(7) census, Mobius, Eulerian counts, certification", criterion3},
      {"solvable groups: homology concentrated in one degree", criterion4},
      {"Mayer-Vietoris lower bounds on betti1", criterion5},
      {"Betti numbers agree across models", criterion6},
      {"P(G,-1) against the chain-count Euler characteristic", criterion7},
      {"direct products: simple connectivity verdicts", criterion8},
      {"join identities for products", criterion9},
      {"PSL2(7) trace-squared orders and (2,3)-generation", criterion10}};

  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    r.id = static_cast<int>(i + 1);
    r.title = criteria[i].first;
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(ctx, c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = c.ok();
    r.detail = c.detail();
    out.push_back(std::move(r));
  }
  return out;
}

bool all_passed(const std::vector<CriterionResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const CriterionResult& x) { return x.pass; });
}

json acceptance_json(const std::vector<CriterionResult>& r) {
  json a = json::array();
  for (const auto& x : r) a.push_back({{"id", x.id}, {"title", x.title}, {"pass", x.pass}, {"detail", x.detail}});
  return {{"criteria", a}, {"all_passed", all_passed(r)}};
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << " (" << r.seconds << " s)";
  if (!r.detail.empty()) o << ": " << r.detail;
  return o.str();
}

}  // namespace ctopo::cli

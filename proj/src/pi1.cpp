#include "coset_topo/pi1.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "coset_topo/errors.hpp"
#include "coset_topo/parallel.hpp"

namespace ctopo {

// ---------------------------------------------------------------------------
// Presentations

Presentation edge_path_presentation(const SimplicialComplex& k2, Vertex basepoint) {
  if (!k2.complete_through(2)) throw std::invalid_argument("edge_path_presentation: need the full 2-skeleton");
  const std::size_t n = k2.num_vertices();
  if (basepoint >= n) throw std::invalid_argument("edge_path_presentation: basepoint out of range");
  const std::size_t ne = k2.dimension() >= 1 ? k2.count(1) : 0;

  Presentation p;
  p.basepoint = basepoint;
  std::vector<char> in_tree(ne, 0);
  if (ne == n * (n - 1) / 2) {
    p.tree = "star";
    for (std::size_t e = 0; e < ne; ++e) {
      const auto s = k2.simplex(1, e);
      in_tree[e] = s[0] == basepoint || s[1] == basepoint;
    }
  } else {
    p.tree = "bfs";
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto s = k2.simplex(1, e);
      adj[s[0]].emplace_back(s[1], e);
      adj[s[1]].emplace_back(s[0], e);
    }
    std::vector<char> seen(n, 0);
    std::vector<Vertex> queue{basepoint};
    seen[basepoint] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto [w, e] : adj[queue[i]])
        if (!seen[w]) {
          seen[w] = 1;
          in_tree[e] = 1;
          queue.push_back(w);
        }
    if (queue.size() != n) throw std::invalid_argument("edge_path_presentation: complex is disconnected");
  }

  std::vector<std::int64_t> gen_of(ne, -1);
  for (std::size_t e = 0; e < ne; ++e)
    if (!in_tree[e]) {
      gen_of[e] = static_cast<std::int64_t>(p.edges.size());
      const auto s = k2.simplex(1, e);
      p.edges.emplace_back(s[0], s[1]);
    }
  p.num_generators = p.edges.size();

  if (k2.dimension() >= 2) {
    for (std::size_t t = 0; t < k2.count(2); ++t) {
      const auto s = k2.simplex(2, t);
      Word w;
      auto letter = [&](Vertex a, Vertex b, int sign) {
        const Vertex e2[2] = {a, b};
        const std::int64_t g = gen_of[*k2.find(e2)];
        if (g >= 0) w.push_back(sign * static_cast<std::int32_t>(g + 1));
      };
      // (a,b)(b,c)(c,a) with (c,a) = (a,c)⁻¹.
      letter(s[0], s[1], 1);
      letter(s[1], s[2], 1);
      letter(s[0], s[2], -1);
      if (!w.empty()) p.relators.push_back(std::move(w));
    }
  }
  return p;
}

void free_reduce(Word& w) {
  std::size_t top = 0;
  for (std::int32_t x : w) {
    if (top > 0 && w[top - 1] == -x)
      --top;
    else
      w[top++] = x;
  }
  w.resize(top);
}

void cyclic_reduce(Word& w) {
  free_reduce(w);
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) ++a, --b;
  if (a) w = Word(w.begin() + a, w.begin() + b);
}

// ---------------------------------------------------------------------------
// Tietze simplification

namespace {

constexpr std::size_t kMaxSubstitutionLength = 24;
constexpr std::size_t kMaxTotalLength = 50'000'000;

class Tietze {
 public:
  Tietze(const Presentation& p, std::size_t budget)
      : n_(p.num_generators), parent_(n_), sign_(n_, 1), dead_(n_, 0), rels_(p.relators), budget_(budget) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  TietzeResult run(const Presentation& src) {
    for (;;) {
      if (!collapse_short()) break;
      if (exhausted_) break;
      if (!eliminate_one()) break;
      if (exhausted_) break;
    }
    return finish(src);
  }

 private:
  // Letter in terms of live roots, or 0 if trivial.
  std::int32_t resolve(std::int32_t x) {
    std::int32_t g = std::abs(x) - 1;
    int s = x > 0 ? 1 : -1;
    while (parent_[g] != static_cast<std::size_t>(g)) {
      s *= sign_[g];
      g = static_cast<std::int32_t>(parent_[g]);
    }
    if (dead_[g]) return 0;
    return s * (g + 1);
  }

  void rewrite(Word& w) {
    std::size_t o = 0;
    for (std::int32_t x : w) {
      const std::int32_t r = resolve(x);
      if (r) w[o++] = r;
    }
    w.resize(o);
    cyclic_reduce(w);
  }

  bool step() {
    if (++steps_ > budget_) exhausted_ = true;
    return !exhausted_;
  }

  // Handles relators of length ≤ 2 until none remain that change anything.
  // Returns false once the presentation has no relators left to use.
  bool collapse_short() {
    bool changed = true;
    while (changed && !exhausted_) {
      changed = false;
      std::size_t o = 0;
      for (std::size_t i = 0; i < rels_.size(); ++i) {
        Word& w = rels_[i];
        rewrite(w);
        if (w.empty()) {
          if (!step()) break;
          continue;
        }
        if (w.size() == 1) {
          dead_[std::abs(w[0]) - 1] = 1;
          changed = true;
          if (!step()) break;
          continue;
        }
        if (w.size() == 2 && std::abs(w[0]) != std::abs(w[1])) {
          // a^e1 b^e2 = 1, so a = b^(−e1·e2).
          const std::int32_t a = std::abs(w[0]) - 1, b = std::abs(w[1]) - 1;
          const int e1 = w[0] > 0 ? 1 : -1, e2 = w[1] > 0 ? 1 : -1;
          const std::int32_t from = std::max(a, b), to = std::min(a, b);
          parent_[from] = static_cast<std::size_t>(to);
          sign_[from] = -e1 * e2;
          changed = true;
          if (!step()) break;
          continue;
        }
        if (o != i) rels_[o] = std::move(w);
        ++o;
      }
      if (exhausted_) return false;
      rels_.resize(o);
    }
    return !rels_.empty();
  }

  // One general elimination using the shortest relator in which some
  // generator occurs exactly once.
  bool eliminate_one() {
    std::vector<std::size_t> order(rels_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (rels_[a].size() != rels_[b].size()) return rels_[a].size() < rels_[b].size();
      return rels_[a] < rels_[b];
    });
    std::map<std::int32_t, int> count;
    for (std::size_t idx : order) {
      const Word& w = rels_[idx];
      if (w.size() > kMaxSubstitutionLength) break;
      count.clear();
      for (std::int32_t x : w) ++count[std::abs(x)];
      std::int32_t pick = 0;
      for (const auto& [g, c] : count)
        if (c == 1) {
          pick = g;
          break;
        }
      if (!pick) continue;
      // Rotate so the chosen letter leads: x^e u = 1, so x = (u⁻¹)^e.
      const auto at = std::find_if(w.begin(), w.end(), [&](std::int32_t x) { return std::abs(x) == pick; });
      Word rot(at, w.end());
      rot.insert(rot.end(), w.begin(), at);
      const int e = rot[0] > 0 ? 1 : -1;
      Word u(rot.begin() + 1, rot.end());
      Word value;
      if (e == 1) {
        for (auto it = u.rbegin(); it != u.rend(); ++it) value.push_back(-*it);
      } else {
        value = u;
      }
      Word inv_value;
      for (auto it = value.rbegin(); it != value.rend(); ++it) inv_value.push_back(-*it);

      rels_.erase(rels_.begin() + static_cast<std::ptrdiff_t>(idx));
      std::size_t total = 0;
      for (Word& r : rels_) {
        Word out;
        for (std::int32_t x : r) {
          if (x == pick)
            out.insert(out.end(), value.begin(), value.end());
          else if (x == -pick)
            out.insert(out.end(), inv_value.begin(), inv_value.end());
          else
            out.push_back(x);
        }
        cyclic_reduce(out);
        r = std::move(out);
        total += r.size();
      }
      dead_[pick - 1] = 1;  // no longer occurs anywhere
      if (total > kMaxTotalLength) exhausted_ = true;
      step();
      return true;
    }
    return false;
  }

  TietzeResult finish(const Presentation& src) {
    TietzeResult res;
    res.steps = std::min(steps_, budget_);
    res.exhausted = exhausted_;
    std::vector<std::int64_t> renum(n_, -1);
    Presentation& p = res.presentation;
    p.tree = src.tree;
    p.basepoint = src.basepoint;
    for (std::size_t g = 0; g < n_; ++g)
      if (parent_[g] == g && !dead_[g]) {
        renum[g] = static_cast<std::int64_t>(p.edges.size());
        p.edges.push_back(src.edges[g]);
      }
    p.num_generators = p.edges.size();
    for (Word w : rels_) {
      rewrite(w);
      if (w.empty()) continue;
      for (std::int32_t& x : w) {
        const std::int64_t r = renum[std::abs(x) - 1];
        x = (x > 0 ? 1 : -1) * static_cast<std::int32_t>(r + 1);
      }
      p.relators.push_back(std::move(w));
    }
    std::sort(p.relators.begin(), p.relators.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return res;
  }

  std::size_t n_;
  std::vector<std::size_t> parent_;
  std::vector<int> sign_;
  std::vector<char> dead_;
  std::vector<Word> rels_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
};

}  // namespace

TietzeResult tietze_simplify(const Presentation& p, std::size_t budget) {
  for (const Word& w : p.relators)
    for (std::int32_t x : w)
      if (x == 0 || static_cast<std::size_t>(std::abs(x)) > p.num_generators)
        throw std::invalid_argument("tietze_simplify: letter out of range");
  return Tietze(p, budget).run(p);
}

Abelianization abelianize(const Presentation& p) {
  Abelianization a;
  const std::size_t n = p.num_generators;
  std::vector<std::map<std::uint32_t, std::int64_t>> cols;
  bool small = true;
  for (const Word& w : p.relators) {
    std::map<std::uint32_t, std::int64_t> c;
    for (std::int32_t x : w) c[static_cast<std::uint32_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
    for (auto it = c.begin(); it != c.end();) {
      if (it->second == 0) {
        it = c.erase(it);
      } else {
        if (it->second > 127 || it->second < -127) small = false;
        ++it;
      }
    }
    if (!c.empty()) cols.push_back(std::move(c));
  }
  std::size_t rank = 0;
  if (small) {
    BoundaryMatrix m;
    m.rows = n;
    m.cols = cols.size();
    m.col_start.push_back(0);
    for (const auto& c : cols) {
      for (const auto& [r, v] : c) {
        m.row.push_back(r);
        m.val.push_back(static_cast<std::int8_t>(v));
      }
      m.col_start.push_back(m.row.size());
    }
    IntegerReduction ir = integer_reduce(m);
    rank = ir.rank;
    a.torsion = std::move(ir.torsion);
  } else {
    std::vector<std::vector<BigInt>> dense(n, std::vector<BigInt>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols[j]) dense[r][j] = v;
    const SmithResult s = smith_normal_form(std::move(dense));
    rank = s.rank;
    for (const auto& d : s.factors)
      if (d > 1) a.torsion.push_back(d);
  }
  std::sort(a.torsion.begin(), a.torsion.end());
  a.rank = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(rank);
  return a;
}

// ---------------------------------------------------------------------------
// Witness searches

MaximalCover::MaximalCover(const SubgroupLattice& lat) : lat_(&lat) {
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.maximal[i]) maximal_.push_back(static_cast<SubgroupIndex>(i));
  words_ = (maximal_.size() + 63) / 64;
  const std::size_t n = lat.group->order();
  mask_.assign(n * std::max<std::size_t>(words_, 1), 0);
  for (std::size_t b = 0; b < maximal_.size(); ++b)
    lat.subgroups[maximal_[b]].for_each([&](Element x) { mask_[x * words_ + b / 64] |= std::uint64_t{1} << (b % 64); });
}

bool MaximalCover::generates(Element a, Element b) const {
  for (std::size_t w = 0; w < words_; ++w)
    if (mask_[a * words_ + w] & mask_[b * words_ + w]) return false;
  // The trivial group has no maximal subgroups and is generated by anything.
  return true;
}

bool MaximalCover::in_proper_coset(Element g, Element h, Element z) const {
  const FiniteGroup& G = *lat_->group;
  const Element gi = G.inv(g);
  return !generates(G.mul(gi, h), G.mul(gi, z));
}

std::vector<SubgroupIndex> MaximalCover::maximal_containing(Element x) const {
  std::vector<SubgroupIndex> out;
  for (std::size_t b = 0; b < maximal_.size(); ++b)
    if (mask_[x * words_ + b / 64] >> (b % 64) & 1) out.push_back(maximal_[b]);
  return out;
}

TwoGenReport two_gen_condition_check(const SubgroupLattice& lat, unsigned threads) {
  const MaximalCover cover(lat);
  const FiniteGroup& g = *lat.group;
  const std::size_t n = g.order();
  std::vector<std::vector<PairWitness>> per_x(n);
  parallel_for(n, threads, [&](std::size_t xi) {
    const Element x = static_cast<Element>(xi);
    for (Element y = x + 1; y < n; ++y) {
      if (!cover.generates(x, y)) continue;
      PairWitness w{x, y, std::nullopt};
      for (Element z = 0; z < n; ++z)
        if (!cover.generates(z, x) && !cover.generates(z, y) && !cover.generates(g.mul(z, x), g.mul(z, y))) {
          w.z = z;
          break;
        }
      per_x[xi].push_back(w);
    }
  });
  TwoGenReport r;
  for (auto& v : per_x)
    for (auto& w : v) {
      ++r.pairs;
      if (!w.z) ++r.failures;
      r.witnesses.push_back(w);
    }
  r.vacuous = r.pairs == 0;
  r.pass = r.failures == 0;
  return r;
}

EdgeCertificate order_two_subcertificate(const SubgroupLattice& lat) {
  const FiniteGroup& g = *lat.group;
  const std::size_t n = g.order();
  const MaximalCover cover(lat);
  for (Element x = 0; x < n; ++x)
    if (cover.maximal_containing(x).empty()) throw std::invalid_argument("order_two_subcertificate: group is cyclic");
  const auto orders = element_orders(g);
  std::vector<char> trivial(n * n, 0);
  auto mark = [&](Element a, Element b) { trivial[a * n + b] = trivial[b * n + a] = 1; };
  EdgeCertificate cert;
  std::vector<std::pair<Element, Element>> open;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) {
      ++cert.edges;
      if (orders[a] == 2 || orders[b] == 2) ++cert.order_two_edges;
      if (a == 0 || !cover.generates(a, b)) {
        mark(a, b);
        cert.log.push_back({{a, b}, std::nullopt});
      } else {
        open.emplace_back(a, b);
      }
    }
  bool progress = true;
  while (progress && !open.empty()) {
    progress = false;
    std::vector<std::pair<Element, Element>> still;
    for (auto [a, b] : open) {
      std::optional<Element> via;
      for (Element z = 1; z < n && !via; ++z)
        if (z != a && z != b && trivial[a * n + z] && trivial[b * n + z] && cover.in_proper_coset(a, b, z)) via = z;
      if (via) {
        mark(a, b);
        cert.log.push_back({{a, b}, via});
        progress = true;
      } else {
        still.emplace_back(a, b);
      }
    }
    open.swap(still);
  }
  cert.certified = cert.log.size();
  for (const auto& [e, z] : cert.log)
    if (orders[e.first] == 2 || orders[e.second] == 2) ++cert.order_two_certified;
  std::sort(cert.log.begin(), cert.log.end());
  return cert;
}

EdgeWitness order2_witness(const MaximalCover& cover, Element g, Element h) {
  if (g == h) throw std::invalid_argument("order2_witness: {g, h} is not an edge");
  const FiniteGroup& G = *cover.lattice().group;
  EdgeWitness w{g, h, std::nullopt, std::nullopt};
  const Element d = G.mul(G.inv(g), h);
  // Largest maximal subgroups first: their cosets hold the most involutions.
  auto ks = cover.maximal_containing(d);
  std::stable_sort(ks.begin(), ks.end(), [&](SubgroupIndex a, SubgroupIndex b) {
    return cover.lattice().order(a) > cover.lattice().order(b);
  });
  for (SubgroupIndex k : ks) {
    if (!w.k) w.k = k;
    for (Element x : cover.lattice().subgroups[k].elements()) {
      const Element z = G.mul(g, x);
      if (z != 0 && G.mul(z, z) == 0) {
        w.k = k;
        w.z = z;
        return w;
      }
    }
  }
  return w;
}

Order2Report order2_witness_check(const SubgroupLattice& lat, const EdgeCertificate& sub, unsigned threads) {
  const MaximalCover cover(lat);
  const FiniteGroup& g = *lat.group;
  const std::size_t n = g.order();
  const auto orders = element_orders(g);
  Order2Report r;
  r.subcertificate_ok = sub.covers_order_two();
  std::vector<std::vector<EdgeWitness>> per_g(n);
  parallel_for(n, threads, [&](std::size_t gi) {
    const Element a = static_cast<Element>(gi);
    if (a == 0 || orders[a] == 2) return;
    for (Element b = a + 1; b < n; ++b) {
      if (orders[b] == 2) continue;
      if (!cover.generates(a, b)) {
        // {1, a, b} is already a triangle through the tree.
        EdgeWitness w{a, b, std::nullopt, std::nullopt};
        w.through_identity = true;
        per_g[gi].push_back(w);
      } else {
        per_g[gi].push_back(order2_witness(cover, a, b));
      }
    }
  });
  for (auto& v : per_g)
    for (auto& w : v) {
      ++r.edges;
      if (w.z || w.through_identity) ++r.covered;
      r.witnesses.push_back(w);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Orchestration

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::proven_trivial: return "Proven-trivial";
    case CertStatus::nontrivial: return "Nontrivial";
    case CertStatus::unknown: return "Unknown";
  }
  return "?";
}

CertificationReport certify_simple_connectivity(const SubgroupLattice& lat, const CertifyOptions& opt) {
  const FiniteGroup& g = *lat.group;
  CertificationReport rep;
  if (g.order() == 1) {
    rep.status = CertStatus::nontrivial;
    rep.method = "connectivity";
    rep.stages.push_back({"connectivity", "pass", "C(G) is empty"});
    return rep;
  }
  if (is_cyclic_prime_power(g)) {
    const auto pm = cyclic_prime_power_maximal(lat);
    rep.status = CertStatus::nontrivial;
    rep.method = "connectivity";
    rep.stages.push_back({"connectivity", "pass",
                          "cyclic of prime-power order; C(G) has " + std::to_string(pm ? pm->second : g.order()) +
                              " contractible components"});
    return rep;
  }
  bool cyclic = false;
  for (Element x = 0; x < g.order() && !cyclic; ++x) cyclic = element_order(g, x) == g.order();

  const SimplicialComplex m2 = minimal_cover_skeleton(lat, 2, opt.simplex_budget);

  // (a) homology of M(G)².
  const HomologyProfile h = reduced_homology(m2, 1);
  rep.betti1 = h.betti(1);
  const bool h_nonzero = h.betti(0) != 0 || h.betti(1) != 0 || !h.torsion(1).empty() || !h.torsion(0).empty();
  {
    std::string detail = "b0=" + std::to_string(h.betti(0)) + " b1=" + std::to_string(h.betti(1));
    if (!h.torsion(1).empty()) detail += " with torsion in H1";
    rep.stages.push_back({"homology", h_nonzero ? "pass" : "fail", detail});
  }

  // (b) two-generator witnesses.
  std::optional<bool> two_gen_ok;
  if (cyclic) {
    rep.stages.push_back({"two_gen", "skipped", "G is cyclic"});
  } else {
    rep.two_gen = two_gen_condition_check(lat, opt.threads);
    two_gen_ok = rep.two_gen->pass;
    rep.stages.push_back({"two_gen", rep.two_gen->pass ? "pass" : "fail",
                          std::to_string(rep.two_gen->pairs) + " generating pairs, " +
                              std::to_string(rep.two_gen->failures) + " without witness"});
  }

  // (c) Tietze on the edge-path presentation.
  bool tietze_ok = false;
  if (h.betti(0) == 0) {
    const Presentation pres = edge_path_presentation(m2, 0);
    rep.tietze = tietze_simplify(pres, opt.tietze_budget);
    rep.abelian = abelianize(rep.tietze->presentation);
    if (rep.abelian->rank != h.betti(1) || rep.abelian->torsion != h.torsion(1))
      throw InvariantViolation("pi1: abelianization disagrees with H1 of the same complex");
    tietze_ok = rep.tietze->trivial();
    const std::string detail = std::to_string(pres.num_generators) + " generators, " +
                               std::to_string(pres.relators.size()) + " relators -> " +
                               std::to_string(rep.tietze->presentation.num_generators) + " generators, " +
                               std::to_string(rep.tietze->presentation.relators.size()) + " relators in " +
                               std::to_string(rep.tietze->steps) + " steps";
    rep.stages.push_back({"tietze", tietze_ok ? "pass" : (rep.tietze->exhausted ? "exhausted" : "fail"), detail});
  } else {
    rep.stages.push_back({"tietze", "skipped", "M(G) is disconnected"});
  }

  // (d) order-two witness pipeline.
  bool pipeline_ok = false;
  if (cyclic) {
    rep.stages.push_back({"witness_pipeline", "skipped", "G is cyclic"});
  } else {
    const EdgeCertificate sub = order_two_subcertificate(lat);
    rep.order2 = order2_witness_check(lat, sub, opt.threads);
    pipeline_ok = rep.order2->pass();
    rep.stages.push_back({"witness_pipeline", pipeline_ok ? "pass" : "fail",
                          std::to_string(sub.order_two_certified) + "/" + std::to_string(sub.order_two_edges) +
                              " order-two edges pre-certified, " + std::to_string(rep.order2->covered) + "/" +
                              std::to_string(rep.order2->edges) + " remaining edges witnessed"});
  }

  const bool any_trivial = two_gen_ok.value_or(false) || tietze_ok || pipeline_ok;
  if (h_nonzero && any_trivial) throw InvariantViolation("pi1: a triviality certificate contradicts nonzero homology");
  if (h_nonzero) {
    rep.status = CertStatus::nontrivial;
    rep.method = "homology";
  } else if (two_gen_ok.value_or(false)) {
    rep.status = CertStatus::proven_trivial;
    rep.method = "two_gen";
  } else if (tietze_ok) {
    rep.status = CertStatus::proven_trivial;
    rep.method = "tietze";
  } else if (pipeline_ok) {
    rep.status = CertStatus::proven_trivial;
    rep.method = "witness_pipeline";
  }
  return rep;
}

}  // namespace ctopo

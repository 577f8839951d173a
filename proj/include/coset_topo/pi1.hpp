#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coset_topo/homology.hpp"
#include "coset_topo/topo.hpp"

namespace ctopo {

// Letters are ±(generator + 1).
using Word = std::vector<std::int32_t>;

struct Presentation {
  std::size_t num_generators = 0;
  // Generator i is the oriented edge (u, v), u < v, that is not in the tree.
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Word> relators;
  std::string tree;  // "star" or "bfs"
  Vertex basepoint = 0;
};

// Generators for non-tree edges; one relator (u,v)(v,w)(w,u) per triangle
// with tree edges deleted. Tree and inverse-pair relations are applied on
// construction. Throws std::invalid_argument on a disconnected complex.
Presentation edge_path_presentation(const SimplicialComplex& k2, Vertex basepoint = 0);

void free_reduce(Word& w);
// Free reduction followed by cancellation across the ends.
void cyclic_reduce(Word& w);

struct TietzeResult {
  Presentation presentation;  // surviving generators renumbered 0..n-1
  std::size_t steps = 0;
  bool exhausted = false;     // budget ran out before a fixpoint
  bool trivial() const { return presentation.num_generators == 0; }
};

inline constexpr std::size_t kDefaultTietzeBudget = 1'000'000;

// Deterministic: relators are handled shortest first, ties by generator
// index. A step is one generator elimination or relator deletion.
TietzeResult tietze_simplify(const Presentation& p, std::size_t budget = kDefaultTietzeBudget);

struct Abelianization {
  std::int64_t rank = 0;
  std::vector<BigInt> torsion;
  bool operator==(const Abelianization&) const = default;
};
Abelianization abelianize(const Presentation& p);

// Membership masks over maximal subgroups: ⟨S⟩ ≠ G iff the masks of S share a bit.
class MaximalCover {
 public:
  explicit MaximalCover(const SubgroupLattice& lat);
  bool generates(Element a, Element b) const;
  // g, h, z lie in a common proper coset.
  bool in_proper_coset(Element g, Element h, Element z) const;
  std::vector<SubgroupIndex> maximal_containing(Element x) const;
  const SubgroupLattice& lattice() const { return *lat_; }

 private:
  const SubgroupLattice* lat_;
  std::vector<SubgroupIndex> maximal_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> mask_;  // words_ per element
};

struct PairWitness {
  Element x = 0, y = 0;
  std::optional<Element> z;
};
struct TwoGenReport {
  bool vacuous = false;  // no generating pairs at all
  bool pass = false;
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::vector<PairWitness> witnesses;  // one per generating pair x < y, smallest z
};
TwoGenReport two_gen_condition_check(const SubgroupLattice& lat, unsigned threads = 1);

// Edges {g, h} of M(G)² whose generator is forced trivial by propagation
// from the star tree at the identity: {1,g,h} triangles first, then any
// triangle {g,h,z} whose other two edges are already trivial.
struct EdgeCertificate {
  std::size_t edges = 0;
  std::size_t order_two_edges = 0;        // edges with an endpoint of order 2
  std::size_t order_two_certified = 0;
  std::size_t certified = 0;
  // For each certified edge (g < h): the third vertex used, or nullopt if a
  // tree edge or closed directly through the identity.
  std::vector<std::pair<std::pair<Element, Element>, std::optional<Element>>> log;
  bool covers_order_two() const { return order_two_certified == order_two_edges; }
};
EdgeCertificate order_two_subcertificate(const SubgroupLattice& lat);

struct EdgeWitness {
  Element g = 0, h = 0;
  std::optional<SubgroupIndex> k;  // maximal K with gK = hK
  std::optional<Element> z;        // involution in gK
  bool through_identity = false;   // ⟨g, h⟩ ≠ G, no witness needed
};
// Throws std::invalid_argument when g == h.
EdgeWitness order2_witness(const MaximalCover& cover, Element g, Element h);

struct Order2Report {
  bool subcertificate_ok = false;
  std::size_t edges = 0;
  std::size_t covered = 0;
  std::vector<EdgeWitness> witnesses;  // edges with neither endpoint of order 2
  bool pass() const { return subcertificate_ok && covered == edges; }
};
Order2Report order2_witness_check(const SubgroupLattice& lat, const EdgeCertificate& sub, unsigned threads = 1);

enum class CertStatus { proven_trivial, nontrivial, unknown };
std::string to_string(CertStatus s);

struct StageOutcome {
  std::string stage;   // homology | two_gen | tietze | witness_pipeline | connectivity
  std::string result;  // pass | fail | skipped | exhausted
  std::string detail;
};

struct CertificationReport {
  CertStatus status = CertStatus::unknown;
  std::string method;
  std::optional<std::int64_t> betti1;
  std::vector<StageOutcome> stages;
  std::optional<TwoGenReport> two_gen;
  std::optional<TietzeResult> tietze;
  std::optional<Abelianization> abelian;
  std::optional<Order2Report> order2;
};

struct CertifyOptions {
  std::size_t simplex_budget = kDefaultSimplexBudget;
  std::size_t tietze_budget = kDefaultTietzeBudget;
  unsigned threads = 1;
};
// Runs every stage; the status comes from the first conclusive one in the
// order homology, two_gen, tietze, witness_pipeline.
CertificationReport certify_simple_connectivity(const SubgroupLattice& lat, const CertifyOptions& opt = {});

}  // namespace ctopo

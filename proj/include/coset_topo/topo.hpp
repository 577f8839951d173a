#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coset_topo/lattice.hpp"

namespace ctopo {

using Vertex = std::uint32_t;

inline constexpr std::size_t kDefaultSimplexBudget = 50'000'000;

enum class PosetKind { coset, subgroup, product, derived };
std::string to_string(PosetKind k);

struct CosetLabel {
  SubgroupIndex subgroup = 0;
  Element rep = 0;  // least element of the coset
  bool operator==(const CosetLabel&) const = default;
};

// Finite strict partial order. Indices form a linear extension (x < y
// implies index x < index y) and each element stores the sorted list of
// everything strictly above it.
class Poset {
 public:
  Poset() = default;
  Poset(PosetKind kind, std::vector<std::vector<Vertex>> up, std::vector<std::string> labels = {});

  std::size_t size() const { return up_.size(); }
  PosetKind kind() const { return kind_; }
  std::span<const Vertex> up(Vertex x) const { return up_[x]; }
  bool lt(Vertex x, Vertex y) const;
  bool comparable(Vertex x, Vertex y) const { return x == y || lt(x, y) || lt(y, x); }
  std::size_t relation_count() const;
  std::vector<Vertex> minimal_elements() const;

  const std::string& label(Vertex x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Present for coset posets and their subposets.
  std::vector<CosetLabel> cosets;

  // Throws InvariantViolation unless lt is irreflexive, transitive and
  // compatible with the index order.
  void verify() const;

 private:
  PosetKind kind_ = PosetKind::derived;
  std::vector<std::vector<Vertex>> up_;
  std::vector<std::string> labels_;
};

// Subposet on the elements with keep[x] set, indices renumbered in order.
Poset induced_subposet(const Poset& p, const std::vector<char>& keep, PosetKind kind);

// Simplices stored per dimension as flat arrays of lexicographically sorted
// (k+1)-tuples. Every vertex in [0, num_vertices) is a 0-simplex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(std::size_t num_vertices, std::optional<int> truncated_at = std::nullopt);

  std::size_t num_vertices() const { return n_; }
  int dimension() const { return static_cast<int>(flat_.size()) - 1; }
  std::size_t count(int k) const;
  std::span<const Vertex> simplex(int k, std::size_t i) const {
    return {flat_[k].data() + i * (k + 1), static_cast<std::size_t>(k + 1)};
  }
  std::span<const Vertex> data(int k) const { return flat_[k]; }
  std::optional<std::size_t> find(std::span<const Vertex> s) const;
  std::vector<std::size_t> f_vector() const;
  std::size_t total() const;
  // Vertex entries held across all dimensions.
  std::size_t stored_words() const;

  std::optional<int> truncated_at() const { return truncated_at_; }
  void set_truncated_at(std::optional<int> t) { truncated_at_ = t; }
  // True when every simplex of dimension ≤ k is present.
  bool complete_through(int k) const { return !truncated_at_ || k <= *truncated_at_; }

  // Builders: append sorted tuples in any order, then normalize.
  void append(std::span<const Vertex> s);
  void normalize();

  // Downward closure up to the truncation; throws InvariantViolation.
  void verify() const;

  bool operator==(const SimplicialComplex& o) const { return n_ == o.n_ && flat_ == o.flat_; }

 private:
  void normalize_dim(int k);

  std::size_t n_ = 0;
  std::optional<int> truncated_at_;
  std::vector<std::vector<Vertex>> flat_;
};

// Complex whose simplices are the subsets (of size ≤ max_dim + 1) of the
// given vertex families.
SimplicialComplex complex_from_facets(std::size_t num_vertices, const std::vector<std::vector<Vertex>>& facets,
                                      std::optional<int> max_dim, std::size_t budget = kDefaultSimplexBudget);

// Members of a coset poset element.
ElementSet coset_members(const SubgroupLattice& lat, CosetLabel c);

Poset coset_poset(const SubgroupLattice& lat);
// Cosets of the proper subgroups selected by keep_subgroup (indexed by lattice index).
Poset coset_poset_filtered(const SubgroupLattice& lat, const std::vector<char>& keep_subgroup);
Poset subgroup_poset(const SubgroupLattice& lat);

SimplicialComplex order_complex(const Poset& p, std::optional<int> max_dim = std::nullopt,
                                std::size_t budget = kDefaultSimplexBudget);

// Vertices are group elements; simplices are subsets of proper cosets.
SimplicialComplex minimal_cover_skeleton(const SubgroupLattice& lat, std::optional<int> k,
                                         std::size_t budget = kDefaultSimplexBudget);

struct CrossCutComplex {
  SimplicialComplex complex;
  std::vector<CosetLabel> vertices;
};
CrossCutComplex crosscut_prime_complex(const SubgroupLattice& lat, std::optional<int> max_dim = std::nullopt,
                                       std::size_t budget = kDefaultSimplexBudget);

// One vertex per cover member; a simplex for every subfamily with a common point.
SimplicialComplex nerve(const std::vector<std::vector<Vertex>>& cover, std::optional<int> max_dim = std::nullopt,
                        std::size_t budget = kDefaultSimplexBudget);
// The cover of Δ(P) by the cones P_{≥a} over the minimal elements a.
std::vector<std::vector<Vertex>> atom_cone_cover(const Poset& p);

Poset face_poset(const SimplicialComplex& k);
SimplicialComplex barycentric_subdivision(const SimplicialComplex& k, std::size_t budget = kDefaultSimplexBudget);

Poset poset_product(const Poset& p, const Poset& q, std::size_t budget = kDefaultSimplexBudget);
Poset chain_poset(std::size_t n);
Poset antichain_poset(std::size_t n);

enum class ProductMode { direct, semidirect };
// Non-saturating cosets of a group built by direct_product / make_semidirect.
Poset nonsaturating_subposet(const Poset& cosets, const SubgroupLattice& lat, ProductMode mode);
// Cosets of the proper subgroups of N invariant under the complement's action.
Poset invariant_coset_poset(const SubgroupLattice& normal_lat, const std::vector<std::vector<Element>>& action);

struct PruneResult {
  Poset poset;
  std::vector<Vertex> kept;  // old index of each surviving element
};
// Removes `remove` after checking that every removed x has a contractible
// fiber {y ∉ remove : y > x}: nonempty, and either a cone or retracting onto
// one through meets with a fixed apex. Throws InvariantViolation naming x
// otherwise.
PruneResult prune_with_cone_fibers(const Poset& p, const std::vector<Vertex>& remove);
// Elements of a coset poset whose subgroup satisfies pred.
std::vector<Vertex> cosets_of(const Poset& p, const std::vector<char>& subgroup_mask);

// Flat text exchange format: a JSON header line, then one simplex per line
// as "k v0 ... vk".
void write_complex(std::ostream& out, const SimplicialComplex& k, const std::string& header_json);
SimplicialComplex read_complex(std::istream& in, std::string* header_json = nullptr);

}  // namespace ctopo

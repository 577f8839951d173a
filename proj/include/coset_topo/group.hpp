#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coset_topo/element_set.hpp"

namespace ctopo {

inline constexpr std::size_t kFullAssociativityGuard = 512;
inline constexpr std::size_t kOrderHardCap = 1100;

class FiniteGroup;

// Retained for groups built as N ⋊ H (direct products use the trivial
// action). Element (n, h) has index h * |N| + n.
struct ProductStructure {
  bool semidirect = false;
  std::shared_ptr<const FiniteGroup> normal;
  std::shared_ptr<const FiniteGroup> complement;
  // action[h][n] = image of n under the automorphism attached to h.
  std::vector<std::vector<Element>> action;

  Element normal_coord(Element g) const;
  Element complement_coord(Element g) const;
  Element pair(Element n, Element h) const;
};

// A group stored as its Cayley table. Identity is always index 0.
class FiniteGroup {
 public:
  // Validates the table (identity row/column 0, Latin square, associativity)
  // and throws InvariantViolation on failure.
  FiniteGroup(std::vector<std::uint16_t> table, std::size_t order, std::string label,
              std::vector<std::string> element_labels = {});

  std::size_t order() const { return order_; }
  const std::string& label() const { return label_; }

  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element identity() const { return 0; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv_[g]); }  // g x g⁻¹

  const std::string& element_label(Element g) const { return element_labels_[g]; }
  std::optional<Element> find_label(const std::string& label) const;

  std::span<const std::uint16_t> table() const { return table_; }

  const std::optional<ProductStructure>& product() const { return product_; }
  void set_product(ProductStructure p) { product_ = std::move(p); }

  ElementSet empty_set() const { return ElementSet(order_); }
  ElementSet all() const;

 private:
  void validate();

  std::size_t order_;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inv_;
  std::string label_;
  std::vector<std::string> element_labels_;
  std::optional<ProductStructure> product_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Constructors.
FiniteGroup make_cyclic(std::size_t n);
FiniteGroup make_dihedral(std::size_t n);  // order 2n
FiniteGroup make_quaternion();
FiniteGroup make_alternating(std::size_t n);
FiniteGroup make_symmetric(std::size_t n);
FiniteGroup make_psl2(std::uint32_t p);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
// action[h] is the automorphism of n_grp attached to h ∈ h_grp.
FiniteGroup make_semidirect(const FiniteGroup& n_grp, const FiniteGroup& h_grp,
                            const std::vector<std::vector<Element>>& action);
// ℤ/n ⋊ ℤ/m with the generator of ℤ/m acting as x ↦ r·x.
FiniteGroup make_cyclic_semidirect(std::size_t n, std::size_t m, std::size_t r);
// Explicit 0-indexed Cayley table.
FiniteGroup make_from_table(const std::vector<std::vector<std::uint32_t>>& rows, std::string label);

// Index of the PSL₂(F_p) element represented by (a b; c d), det = 1, as laid
// out by make_psl2(p).
Element psl2_element(const FiniteGroup& g, std::uint32_t p, std::int64_t a, std::int64_t b,
                     std::int64_t c, std::int64_t d);
// (a + d)² mod p of the element, well defined on ±A.
std::uint32_t psl2_trace_squared(const FiniteGroup& g, std::uint32_t p, Element e);

// Primitives.
std::size_t element_order(const FiniteGroup& g, Element e);
std::vector<std::size_t> element_orders(const FiniteGroup& g);
Element power(const FiniteGroup& g, Element e, std::size_t k);

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& seed);
ElementSet generated_subgroup(const FiniteGroup& g, std::span<const Element> gens);
// Closure of an existing subgroup together with extra generators.
ElementSet extend_subgroup(const FiniteGroup& g, const ElementSet& subgroup, std::span<const Element> extra);
bool generates(const FiniteGroup& g, std::span<const Element> gens);

// True iff elems lies in a proper left coset of some subgroup.
bool coset_generates_proper(const FiniteGroup& g, std::span<const Element> elems);
bool coset_generates_proper(const FiniteGroup& g, const ElementSet& elems);

bool is_abelian(const FiniteGroup& g);
std::size_t exponent(const FiniteGroup& g);

// Small generating tuple chosen greedily by descending element order.
std::vector<Element> small_generating_tuple(const FiniteGroup& g, std::size_t max_size = 3);

std::size_t automorphism_count(const FiniteGroup& g);
// All automorphisms as permutations of element indices (same search).
std::vector<std::vector<Element>> automorphisms(const FiniteGroup& g);

}  // namespace ctopo

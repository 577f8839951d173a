#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coset_topo/simd.hpp"

namespace ctopo {

using Element = std::uint32_t;

// Fixed-universe bit-set over element indices [0, universe). The popcount is
// cached and kept in sync by every mutating operation.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet of(std::size_t universe, std::span<const Element> elems) {
    ElementSet s(universe);
    for (Element e : elems) s.insert(e);
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }

  void insert(Element e) {
    std::uint64_t& w = words_[e >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    size_ += (w & bit) ? 0 : 1;
    w |= bit;
  }

  void erase(Element e) {
    std::uint64_t& w = words_[e >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    size_ -= (w & bit) ? 1 : 0;
    w &= ~bit;
  }

  bool is_subset_of(const ElementSet& other) const {
    return size_ <= other.size_ && simd::active().is_subset(words_.data(), other.words_.data(), words_.size());
  }

  bool intersects(const ElementSet& other) const {
    return simd::active().intersects(words_.data(), other.words_.data(), words_.size());
  }

  std::size_t intersection_size(const ElementSet& other) const {
    return simd::active().and_popcount(words_.data(), other.words_.data(), words_.size());
  }

  ElementSet& operator&=(const ElementSet& other) {
    simd::active().and_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    recount();
    return *this;
  }

  ElementSet& operator|=(const ElementSet& other) {
    simd::active().or_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    recount();
    return *this;
  }

  ElementSet& operator-=(const ElementSet& other) {
    simd::active().andnot_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    recount();
    return *this;
  }

  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  // Smallest element; requires a nonempty set.
  Element first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Element>(i * 64 + std::countr_zero(words_[i]));
    return static_cast<Element>(universe_);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<Element>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const ElementSet& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }

  // Orders by size, then by the sorted element list.
  std::strong_ordering operator<=>(const ElementSet& other) const {
    if (auto c = size_ <=> other.size_; c != 0) return c;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] == other.words_[i]) continue;
      const std::uint64_t diff = words_[i] ^ other.words_[i];
      const std::uint64_t low = diff & (~diff + 1);
      // The set owning the lowest differing element sorts first.
      return (words_[i] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t w : words_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

 private:
  void recount() { size_ = simd::active().popcount(words_.data(), words_.size()); }

  std::size_t universe_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace ctopo

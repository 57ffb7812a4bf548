#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace median {

/// Dense set of indices in [0, universe), one bit per index.
/// The tag keeps point sets and wall sets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> items) : IndexSet(universe) {
    for (auto i : items) set(i);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return n_; }

  bool test(std::size_t i) const {
    assert(i < n_);
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  bool contains(std::size_t i) const { return i < n_ && test(i); }
  void set(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) {
    assert(i < n_);
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !empty(); }

  std::optional<std::size_t> first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return std::nullopt;
  }

  IndexSet& operator|=(const IndexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  IndexSet& operator^=(const IndexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  // set difference
  IndexSet& operator-=(const IndexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator^(IndexSet a, const IndexSet& b) { return a ^= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  IndexSet complement() const {
    IndexSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  bool subset_of(const IndexSet& o) const {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const IndexSet& o) const {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  std::size_t hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL + 0x9e37;
    return h;
  }

  friend bool operator==(const IndexSet& a, const IndexSet& b) = default;

  // Total order: at the first index where the sets differ, the set holding it is smaller.
  friend std::strong_ordering operator<=>(const IndexSet& a, const IndexSet& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      std::uint64_t d = a.words_[k] ^ b.words_[k];
      if (!d) continue;
      std::uint64_t low = d & (~d + 1);
      return (a.words_[k] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PointTag {};
struct WallTag {};

using PointId = std::size_t;
using WallId = std::size_t;
using PointSet = IndexSet<PointTag>;
using WallMask = IndexSet<WallTag>;

struct IndexSetHash {
  template <class Tag>
  std::size_t operator()(const IndexSet<Tag>& s) const {
    return s.hash();
  }
};

}  // namespace median

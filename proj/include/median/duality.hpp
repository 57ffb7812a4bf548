#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "median/index_set.hpp"
#include "median/report.hpp"
#include "median/space.hpp"

namespace median {

struct ElementTag {};
using ElementSet = IndexSet<ElementTag>;

/// One side chosen per complementary pair: choice[k] is true when the second
/// element of pair k is taken.
struct Ultrafilter {
  std::vector<bool> choice;
  friend auto operator<=>(const Ultrafilter&, const Ultrafilter&) = default;
  friend bool operator==(const Ultrafilter&, const Ultrafilter&) = default;
};

/// Finite measured poc set. Element 0 is the minimum "0", element 1 its
/// complement "0*"; pair k owns elements 2+2k and 3+2k, which are each other's
/// complements. The order is stored transitively closed.
class MeasuredPocSet {
 public:
  struct PairSpec {
    std::string first;
    std::string second;
    Rational weight;
  };

  /// `less` lists relations p < q between element ids. Throws BadParams when
  /// the closure is not a poc set order or a weight is not positive.
  static MeasuredPocSet make(std::vector<PairSpec> pairs, std::span<const std::pair<std::size_t, std::size_t>> less);

  static constexpr std::size_t zero = 0;
  static constexpr std::size_t zero_star = 1;
  static constexpr std::size_t star(std::size_t e) { return e ^ 1U; }
  static constexpr std::size_t element(std::size_t pair, bool second) { return 2 + 2 * pair + (second ? 1 : 0); }
  static constexpr std::size_t pair_of(std::size_t e) { return (e - 2) / 2; }

  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t element_count() const { return 2 + 2 * pairs_.size(); }
  const std::string& name(std::size_t e) const;
  std::optional<std::size_t> find(std::string_view name) const;
  const Rational& weight(std::size_t pair) const { return pairs_.at(pair).weight; }
  const std::vector<PairSpec>& pairs() const { return pairs_; }

  bool leq(std::size_t p, std::size_t q) const { return up_[p].test(q); }
  bool less(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }
  /// Covering relations p < q among proper elements.
  std::vector<std::pair<std::size_t, std::size_t>> hasse() const;

  const std::optional<Ultrafilter>& basepoint() const { return basepoint_; }
  /// Throws BadParams if u is not an ultrafilter.
  void set_basepoint(Ultrafilter u);

  bool is_ultrafilter(const Ultrafilter& u) const;
  /// Elements chosen by u.
  ElementSet chosen(const Ultrafilter& u) const;

 private:
  std::vector<PairSpec> pairs_;
  std::vector<ElementSet> up_;  // up_[p] = {q : p <= q}
  std::optional<Ultrafilter> basepoint_;
};

/// Halfspaces of S ordered by inclusion. Pair k is wall k, lower side first.
/// The basepoint is the principal ultrafilter of point 0.
MeasuredPocSet pocset_of(const MedianSpace& s);

Ultrafilter principal_ultrafilter(const MedianSpace& s, PointId x);

/// All ultrafilters in lexicographic order of choices.
std::vector<Ultrafilter> ultrafilters(const MeasuredPocSet& p);

struct Realization {
  MedianSpace space;
  std::vector<Ultrafilter> points;  // points[i] is the ultrafilter behind point i
};

/// The dual median space: ultrafilters with the measure of the walls on which two choices differ.
Realization realize(const MeasuredPocSet& p);

MeasuredPocSet disjoint_union(const MeasuredPocSet& a, const MeasuredPocSet& b);

struct ProductSpace {
  MedianSpace space;
  std::vector<std::pair<PointId, PointId>> coords;
};

/// l1 product; point (a, b) is named "a|b".
ProductSpace l1_product(const MedianSpace& a, const MedianSpace& b);

/// Pair permutation plus side flips; relabels elements and keeps the structure.
MeasuredPocSet relabel(const MeasuredPocSet& p, std::span<const std::size_t> pair_order, const std::vector<bool>& flip);

/// Checks that the element map preserves 0, complements, the order in both
/// directions and weights, and is a bijection.
bool is_isomorphism(const MeasuredPocSet& a, const MeasuredPocSet& b, std::span<const std::size_t> element_map);

/// x -> principal ultrafilter is a bijection onto the ultrafilters of the halfspace
/// poc set and preserves distances exactly.
Report roundtrip_check(const MedianSpace& s);

/// realize(a ⊔ b) against the product of the realizations.
Report contravariance_check(const MeasuredPocSet& a, const MeasuredPocSet& b);

/// Halfspaces of a product against the disjoint union of the factors' halfspaces.
Report product_pocset_check(const MedianSpace& a, const MedianSpace& b);

}  // namespace median

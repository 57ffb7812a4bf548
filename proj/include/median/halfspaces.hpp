#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "median/core.hpp"

namespace median {

enum class PairKind {
  equal,
  complementary,
  nested,      // one strictly inside the other
  disjoint,
  transverse,
  covering,    // the union is everything, neither contains the other
};

std::string_view to_string(PairKind kind);

struct PairClass {
  PairKind kind = PairKind::equal;
  bool first_inside = false;  // nested only: h1 is inside h2
  friend bool operator==(const PairClass&, const PairClass&) = default;
};

/// Both sides of every wall, ordered by (wall, side).
std::vector<Halfspace> all_halfspaces(const MedianSpace& s);

/// Short stable label: "w<id>+" for the upper side, "w<id>-" for the lower side.
std::string label(Halfspace h);

PairClass classify_pair(const MedianSpace& s, Halfspace h1, Halfspace h2);
bool transverse(const MedianSpace& s, Halfspace h1, Halfspace h2);
bool disjoint(const MedianSpace& s, Halfspace h1, Halfspace h2);
/// h meets A and its complement meets A.
bool splits(const MedianSpace& s, Halfspace h, const PointSet& a);

struct WallSet {
  WallMask walls;
  Rational measure;
};

/// Walls with A entirely on one side and B entirely on the other.
WallSet wall_interval(const MedianSpace& s, const PointSet& a, const PointSet& b);

enum class DepthForm {
  complement,  // max over x in h∩A of d(x, complement of h)
  hyperplane,  // max over x in h∩A of d(x, boundary(h))
};

/// Throws EmptyIntersection when h misses A.
Rational depth(const MedianSpace& s, Halfspace h, const PointSet& a, DepthForm form = DepthForm::complement);

/// Points of h joined to the complement by a skeleton edge.
PointSet boundary(const MedianSpace& s, Halfspace h);

/// Rank of a convex subset viewed as a median space in its own right.
std::size_t subspace_rank(const MedianSpace& s, const PointSet& c);

/// Both sides of every wall with a skeleton edge at x.
std::vector<Halfspace> branched_at(const MedianSpace& s, PointId x);

struct FacingTriple {
  std::array<Halfspace, 3> sides;
  std::optional<PointId> centre;  // strong triples: the common median
};

/// First pairwise-disjoint triple in H (in lexicographic order). With `strong`,
/// the triple must also be pairwise strongly separated and every choice
/// x_i in h_i must have the same median, which is checked exhaustively.
std::optional<FacingTriple> facing_triple(const MedianSpace& s, std::span<const Halfspace> hs, bool strong = false);

/// Disjoint convex sets with no wall splitting both. Throws NotDisjoint.
bool strongly_separated(const ConvexSet& c1, const ConvexSet& c2);

/// Largest pairwise-disjoint subfamily. Requires every pair to be transverse
/// or disjoint; throws PrecondViolated otherwise.
std::vector<Halfspace> extract_disjoint_family(const MedianSpace& s, std::span<const Halfspace> hs);
/// Same search without the precondition.
std::vector<Halfspace> max_disjoint_family(const MedianSpace& s, std::span<const Halfspace> hs);
/// Largest pairwise-transverse subfamily.
std::vector<Halfspace> max_transverse_family(const MedianSpace& s, std::span<const Halfspace> hs);

}  // namespace median

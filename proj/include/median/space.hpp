#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "median/error.hpp"
#include "median/index_set.hpp"
#include "median/rational.hpp"

namespace median {

enum class Form { graph, table };

struct RawEdge {
  PointId u = 0;
  PointId v = 0;
  Rational weight{1};
  friend bool operator==(const RawEdge&, const RawEdge&) = default;
};

using MedianRow = std::array<PointId, 4>;  // a, b, c, m(a,b,c)

/// Unvalidated input: either a weighted graph or an explicit median table.
struct RawSpace {
  Form form = Form::graph;
  std::vector<std::string> points;
  std::vector<RawEdge> edges;
  std::vector<MedianRow> rows;
  friend bool operator==(const RawSpace&, const RawSpace&) = default;
};

/// A wall splits the space in two convex halves. `upper` is the side that does
/// not contain point 0.
struct Wall {
  Rational weight;
  PointSet upper;
};

/// One side of a wall.
struct Halfspace {
  WallId wall = 0;
  bool upper = true;

  Halfspace complement() const { return {wall, !upper}; }
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

struct SkeletonEdge {
  PointId u;
  PointId v;
  WallId wall;
};

struct Diagnostics {
  bool ok = true;
  std::optional<ErrorKind> kind;
  std::string message;
  std::vector<std::string> witness;
};

/// Validated finite median space. Immutable after construction.
class MedianSpace {
 public:
  /// Validates and builds. Throws median::Error describing the first violation.
  static MedianSpace build(RawSpace raw);

  std::size_t size() const { return names_.size(); }
  Form form() const { return raw_.form; }
  const RawSpace& raw() const { return raw_; }

  const std::string& name(PointId p) const { return names_.at(p); }
  std::optional<PointId> find(std::string_view name) const;
  /// Throws BadParams for unknown names.
  PointId at(std::string_view name) const;
  std::vector<std::string> names(const PointSet& s) const;

  const Rational& dist(PointId a, PointId b) const { return dist_[a * size() + b]; }

  PointId median(PointId a, PointId b, PointId c) const;

  std::span<const Wall> walls() const { return walls_; }
  std::size_t wall_count() const { return walls_.size(); }
  const WallMask& signature(PointId p) const { return sig_[p]; }
  std::optional<PointId> lookup(const WallMask& signature) const;

  bool contains(Halfspace h, PointId p) const { return sig_[p].test(h.wall) == h.upper; }
  PointSet members(Halfspace h) const;
  /// Measure of a set of walls.
  Rational measure(const WallMask& walls) const;

  /// Pairs of points separated by exactly one wall.
  std::span<const SkeletonEdge> skeleton() const { return skeleton_; }
  /// Skeleton edges at p, as (neighbour, wall).
  std::span<const std::pair<PointId, WallId>> neighbours(PointId p) const { return adjacency_[p]; }

  /// Walls w' transverse to w (all four quadrants inhabited).
  const WallMask& transverse_walls(WallId w) const { return transverse_[w]; }
  bool transverse(WallId a, WallId b) const { return transverse_[a].test(b); }
  std::size_t rank() const { return rank_; }

  PointSet all() const { return PointSet::full(size()); }
  PointSet empty_set() const { return PointSet(size()); }
  PointSet single(PointId p) const { return PointSet(size(), {p}); }

 private:
  MedianSpace() = default;
  void finish();

  RawSpace raw_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, PointId> index_;
  std::vector<Rational> dist_;
  std::vector<Wall> walls_;
  std::vector<WallMask> sig_;
  std::unordered_map<WallMask, PointId, IndexSetHash> by_sig_;
  std::vector<SkeletonEdge> skeleton_;
  std::vector<std::vector<std::pair<PointId, WallId>>> adjacency_;
  std::vector<WallMask> transverse_;
  std::vector<PointId> table_;  // table form only, n^3 entries
  std::size_t rank_ = 0;

  friend class SpaceBuilder;
};

/// Runs validation without throwing.
Diagnostics validate_space(const RawSpace& raw);

/// Bipartitions with both sides convex under the median operation, found by
/// exhaustive search over subsets. Used to cross-check the wall enumeration.
/// Returns the sides not containing point 0. Throws TooLargeForBruteForce above 22 points.
std::vector<PointSet> brute_force_walls(const MedianSpace& s);

inline constexpr std::size_t kTableFormLimit = 20;
inline constexpr std::size_t kDirectTripleLimit = 128;

}  // namespace median

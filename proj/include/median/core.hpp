#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "median/space.hpp"

namespace median {

/// Nonempty convex subset of a space, with the walls it meets cached for
/// projections. Holds a non-owning reference to the space.
class ConvexSet {
 public:
  /// Throws EmptySet or NotConvex.
  static ConvexSet make(const MedianSpace& s, PointSet members);

  const MedianSpace& space() const { return *space_; }
  const PointSet& members() const { return members_; }
  bool contains(PointId p) const { return members_.test(p); }
  std::size_t size() const { return members_.count(); }

  /// Walls with members on the upper (resp. lower) side.
  const WallMask& meets_upper() const { return upper_; }
  const WallMask& meets_lower() const { return lower_; }
  /// Walls splitting the set.
  WallMask split_walls() const { return upper_ & lower_; }

  friend bool operator==(const ConvexSet& a, const ConvexSet& b) { return a.members_ == b.members_; }

 private:
  ConvexSet(const MedianSpace& s, PointSet members);

  const MedianSpace* space_;
  PointSet members_;
  WallMask upper_;
  WallMask lower_;
};

/// Interval through signatures: x in [a,b] iff x agrees with a and b wherever they agree.
PointSet interval(const MedianSpace& s, PointId a, PointId b);
/// Interval through the metric: d(a,b) = d(a,x) + d(x,b).
PointSet metric_interval(const MedianSpace& s, PointId a, PointId b);

/// Union of [a,b] over a in A, b in B. Throws EmptySet.
PointSet join(const MedianSpace& s, const PointSet& a, const PointSet& b);

struct HullResult {
  PointSet members;
  std::size_t iterations = 0;  // join applications before the fixpoint
};

/// Iterated join J(A) = join(A, A) until it stops growing.
HullResult iterated_join_hull(const MedianSpace& s, const PointSet& a);
/// Intersection of all halfspaces containing A.
PointSet halfspace_hull(const MedianSpace& s, const PointSet& a);

/// Smallest convex superset. Computed by iterated join; asserts that the
/// fixpoint arrives within rank(S) joins and agrees with the halfspace hull.
ConvexSet convex_hull(const MedianSpace& s, const PointSet& a);

bool is_convex(const MedianSpace& s, const PointSet& a);

/// The gate of x in C: the point of C lying in every [c, x].
PointId gate_project(const ConvexSet& c, PointId x);
/// Image of A under the gate projection to C.
PointSet gate_image(const ConvexSet& c, const PointSet& a);

Rational distance(const MedianSpace& s, PointId x, const PointSet& a);
Rational distance(const ConvexSet& c, PointId x);
/// d(A, B) = min distance between members.
Rational set_distance(const MedianSpace& s, const PointSet& a, const PointSet& b);
Rational hausdorff_distance(const MedianSpace& s, const PointSet& a, const PointSet& b);

/// Closed r-neighbourhood of A.
PointSet neighbourhood(const MedianSpace& s, const PointSet& a, const Rational& r);

/// Common intersection. Asserts nonemptiness when the sets pairwise intersect.
PointSet helly_intersection(const MedianSpace& s, std::span<const ConvexSet> sets);

/// Walls separating x from y.
WallMask separating_walls(const MedianSpace& s, PointId x, PointId y);

}  // namespace median

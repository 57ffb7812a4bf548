#pragma once

#include <optional>
#include <span>
#include <vector>

#include "median/halfspaces.hpp"
#include "median/isometry.hpp"
#include "median/report.hpp"

namespace median {

/// Result of mapping a domain into a product of convex sets by gate projections.
struct ProductCheck {
  bool injective = false;
  bool surjective = false;
  std::size_t domain_size = 0;
  std::size_t product_size = 0;
  std::optional<IsometryDefect> defect;  // d(x,y) against the l1 distance of the images
  bool ok() const { return injective && surjective && !defect; }
};

/// Maps x in `domain` to (gate of x in projections[i])_i and compares against
/// the l1 product of `factors` (factors[i] must contain the images).
ProductCheck check_product_map(const MedianSpace& s, const PointSet& domain, std::span<const ConvexSet> projections,
                               std::span<const PointSet> factors);

struct Bridge {
  PointSet gate1;  // gates of C2 in C1
  PointSet gate2;  // gates of C1 in C2
  PointId base = 0;
  PointId partner = 0;  // gate of base in C2
  PointSet span;        // [base, partner]
  Rational distance;
  bool strongly_separated = false;
};

struct BridgeResult {
  Bridge bridge;
  Report report;
};

/// Gates between two convex sets and the product structure of their hull.
BridgeResult bridge(const ConvexSet& c1, const ConvexSet& c2);

/// x -> (gate in C1, gate in C2, gate in [c1,c2]) is an l1 isometric embedding
/// of Conv(C1 ∪ C2). Throws NotStronglySeparated.
Report embed_check(const ConvexSet& c1, const ConvexSet& c2);

/// W(x,y) splits into the wall sets of the three projections.
/// Throws NotStronglySeparated or NotInHull.
Report wall_decomposition_check(const ConvexSet& c1, const ConvexSet& c2, PointId x, PointId y);

/// For C1 ∩ C2 = {x0}: [x, x0] is the l1 product of the projected intervals.
/// Throws IntersectionNotSingleton or NotInHull.
Report interval_product_check(const ConvexSet& c1, const ConvexSet& c2, PointId x);

/// Conv of the closed r-neighbourhood of C stays within rank * r of C.
Report hull_neighbourhood_check(const ConvexSet& c, const Rational& r);

/// Largest skeleton edge weight at a; the discrete slack used by the certificates.
Rational incident_slack(const MedianSpace& s, PointId a);

struct NearHalfspace {
  Halfspace h;
  Rational to_a;     // d(a, h)
  Rational depth_b;  // d(b, complement of h)
  Rational bound;    // d(a,b)/rank - slack
  Rational slack;
  bool certified = false;
};

/// Halfspace containing b but not a, closest to a; ties go to the deepest at b.
NearHalfspace near_halfspace(const MedianSpace& s, PointId a, PointId b);

struct DeepFamily {
  std::vector<Halfspace> family;
  Rational min_depth;   // min over the family of d(b, complement of h)
  Rational distance_a;  // d(a, intersection)
  Rational bound;       // d(a,b) - r(r+1)/2 eps (- slack when used)
  Rational slack;
  bool used_slack = false;
};

/// Pairwise transverse halfspaces separating b from a, each at depth >= eps
/// at b, whose intersection stays far from a. Throws PrecondViolated for eps
/// outside (0, d(a,b)/rank] and NoFamilyFound when the search is empty.
DeepFamily deep_transverse_family(const MedianSpace& s, PointId a, PointId b, const Rational& eps);

/// The sides containing a of the walls at a meet exactly in {a}.
Report point_separation_check(const MedianSpace& s, PointId a);

}  // namespace median

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "median/structure.hpp"

namespace median {

struct ProfileEntry {
  Rational eps;
  std::size_t n = 0;  // largest pairwise-disjoint family of deep halfspaces
  std::vector<Halfspace> family;
};

struct CompactnessProfile {
  std::vector<ProfileEntry> entries;  // sorted by eps
  bool monotone() const;
};

/// Halfspaces splitting C whose depth over C exceeds eps.
std::vector<Halfspace> deep_halfspaces(const MedianSpace& s, const PointSet& c, const Rational& eps);

/// Throws EmptySet for empty C and BadParams for negative eps.
CompactnessProfile compactness_profile(const MedianSpace& s, const PointSet& c, std::span<const Rational> eps);

struct IntervalCover {
  std::vector<PointId> endpoints;  // x_1..x_k
  PointSet trace;                  // union of [x0, x_i]
  std::size_t trace_walls = 0;     // walls splitting the trace
};

/// Greedy cover of C by eps-neighbourhoods of intervals [x0, x_i], x_i in C.
IntervalCover interval_cover(const MedianSpace& s, const PointSet& c, PointId x0, const Rational& eps);

/// Re-verifies the cover and bounds deep disjoint families by the trace walls.
Report interval_cover_check(const MedianSpace& s, const PointSet& c, PointId x0, const Rational& eps);

/// Hull of a deepest point and the boundary approximates h. Throws
/// PrecondViolated when h contains two disjoint halfspaces deeper than eps.
Report branch_approx_check(const MedianSpace& s, Halfspace h, const Rational& eps);

enum class Verdict { grid_like, branching };
std::string_view to_string(Verdict v);

struct RigidityVerdict {
  Verdict verdict = Verdict::branching;
  PointId x0 = 0;
  std::optional<FacingTriple> triple;
  std::vector<Halfspace> family;  // sides through x0
  std::vector<PointSet> lines;    // D_i
  std::optional<ProductCheck> product;
  std::string defect;  // empty unless a grid construction failed
};

RigidityVerdict rigidity_detect(const MedianSpace& s, PointId x0);

/// Checks the verdict from its witness alone.
Report verify_verdict(const MedianSpace& s, const RigidityVerdict& v);

using Permutation = std::vector<PointId>;

struct IsometryGroup {
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // sorted, identity first
};

/// Every isometry of s. Throws TooLargeForBruteForce above kGroupSearchLimit points.
IsometryGroup automorphism_group(const MedianSpace& s);

/// Closure of the given permutations. Throws BadParams if one is not an isometry.
IsometryGroup generate_group(const MedianSpace& s, std::span<const Permutation> generators);

std::vector<Permutation> stabilizer(const IsometryGroup& g, PointId x0);

/// Closed under composition and inverse, every element an isometry.
Report group_check(const MedianSpace& s, const IsometryGroup& g);

Halfspace act(const MedianSpace& s, const Permutation& g, Halfspace h);

PointSet orbit(std::span<const Permutation> group, PointId x);

/// Orbit of x under Stab(x0), bounded by the orbits of the minimal branched
/// halfspaces at x separating it from x0.
Report stabilizer_orbit_check(const MedianSpace& s, const IsometryGroup& g, PointId x0, PointId x);

/// No g fixing x0 maps a halfspace avoiding x0 strictly inside or around
/// itself. Throws PrecondViolated if some g moves x0.
Report stabilizer_wall_check(const MedianSpace& s, std::span<const Permutation> group, PointId x0);

inline constexpr std::size_t kGroupSearchLimit = 10;

}  // namespace median

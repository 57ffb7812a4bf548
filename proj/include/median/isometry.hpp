#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "median/space.hpp"

namespace median {

struct IsometryDefect {
  PointId a = 0;
  PointId b = 0;
  Rational source;  // d(a, b)
  Rational target;  // d(f(a), f(b))
};

struct MapCheck {
  bool bijective = false;
  std::optional<IsometryDefect> defect;  // first pair whose distance changes
  bool ok() const { return bijective && !defect; }
};

/// Checks that map (indexed by points of `from`) is a bijection onto `to` that
/// preserves all distances exactly.
MapCheck check_isometry(const MedianSpace& from, const MedianSpace& to, std::span<const PointId> map);

/// Enumerates isometries from a onto b by backtracking with distance pruning.
/// The visitor returns false to stop.
void for_each_isometry(const MedianSpace& a, const MedianSpace& b,
                       const std::function<bool(std::span<const PointId>)>& visit);

std::optional<std::vector<PointId>> find_isometry(const MedianSpace& a, const MedianSpace& b);

}  // namespace median

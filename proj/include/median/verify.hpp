#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "median/report.hpp"
#include "median/space.hpp"

namespace median {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t random_spaces = 200;
  std::size_t product_pairs = 20;
  std::size_t families = 50;
  std::vector<std::size_t> refine{2, 4, 8};
};

struct Criterion {
  int id;
  std::string title;
  std::function<Report(const VerifyOptions&)> run;
};

/// The acceptance properties, in order.
std::span<const Criterion> criteria();

/// Every criterion merged into one report.
Report verify_all(const VerifyOptions& opts);

/// Largest pairwise-disjoint subfamily by exhaustive branching.
std::size_t brute_force_max_disjoint(const MedianSpace& s, std::span<const Halfspace> hs);

}  // namespace median

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "median/index_set.hpp"

namespace median {

struct VertexTag {};
using VertexSet = IndexSet<VertexTag>;

/// Exact maximum clique (branch and bound with greedy colouring bounds).
/// adjacency[v] must not contain v. The result is sorted; ties are resolved
/// deterministically by the search order.
std::vector<std::size_t> max_clique(std::span<const VertexSet> adjacency);
std::vector<std::size_t> max_clique(std::span<const VertexSet> adjacency, const VertexSet& candidates);

}  // namespace median

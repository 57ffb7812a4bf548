#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "median/space.hpp"

namespace median {

// Builders throw BadParams for out-of-range parameters.

/// Q_n; point names are bit strings, index = binary value.
MedianSpace hypercube(std::size_t n);
/// {0..k} x {0..m} with unit steps scaled by spacing; names "(i,j)".
MedianSpace grid(std::size_t k, std::size_t m, const Rational& spacing = Rational(1));
inline MedianSpace grid(std::size_t k) { return grid(k, k); }
/// The unit square at spacing 1/level.
MedianSpace eps_grid(std::size_t level);
/// v1 - v2 - ... - vk.
MedianSpace path(std::size_t k);
/// Centre "c" with leaves v1..vb.
MedianSpace star(std::size_t b);
/// Centre "c" with leaves v1..vK, leaf i at distance 1/i.
MedianSpace weighted_star(std::size_t k);
/// Three branches c - i_k - t_k, each edge of weight w.
MedianSpace substar(const Rational& w = Rational(1));
/// Binary rooted tree of the given depth; edges into level l weigh 1/l.
MedianSpace rooted_tree(std::size_t depth);
/// Lattice points of the l1 ball of radius r at spacing eps in dimension n.
/// r/eps must be a positive integer.
MedianSpace eps_ball(std::size_t n, const Rational& r, const Rational& eps);
/// l1 product; names "a|b".
MedianSpace product(const MedianSpace& a, const MedianSpace& b);

/// Rejected inputs.
RawSpace cycle5_raw();
RawSpace k4_minus_edge_raw();

/// "hypercube:3", "grid:4", "grid:2:3", "eps_ball:2:1:1/2", "product(star:3,path:3)", ...
MedianSpace build_fixture(std::string_view spec);

/// Named fixtures shared by the tests, the acceptance run and verify-all.
std::vector<std::pair<std::string, MedianSpace>> fixture_corpus();

/// Convex expansions in Q6: each step doubles the hull of 1-3 random points
/// along a new coordinate with a random weight. At most 64 points.
MedianSpace random_median_graph(std::uint64_t seed, std::size_t steps = 6);

}  // namespace median

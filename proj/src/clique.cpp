#include "median/clique.hpp"

#include <algorithm>

namespace median {
namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(std::span<const VertexSet> adj) : adj_(adj) {}

  std::vector<std::size_t> run(const VertexSet& candidates) {
    std::vector<std::size_t> current;
    expand(current, candidates);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Greedy sequential colouring; order[i] gets colour colour[i], colours non-decreasing.
  void colour_sort(const VertexSet& p, std::vector<std::size_t>& order, std::vector<std::size_t>& colour) const {
    VertexSet uncoloured = p;
    std::size_t k = 0;
    while (uncoloured.any()) {
      ++k;
      VertexSet q = uncoloured;
      while (auto v = q.first()) {
        uncoloured.reset(*v);
        q.reset(*v);
        q -= adj_[*v];
        order.push_back(*v);
        colour.push_back(k);
      }
    }
  }

  void expand(std::vector<std::size_t>& current, VertexSet p) {
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    colour_sort(p, order, colour);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + colour[i] <= best_.size()) return;
      std::size_t v = order[i];
      current.push_back(v);
      VertexSet next = p & adj_[v];
      if (next.empty()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, std::move(next));
      }
      current.pop_back();
      p.reset(v);
    }
  }

  std::span<const VertexSet> adj_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> max_clique(std::span<const VertexSet> adjacency, const VertexSet& candidates) {
  if (candidates.empty()) return {};
  return CliqueSearch(adjacency).run(candidates);
}

std::vector<std::size_t> max_clique(std::span<const VertexSet> adjacency) {
  if (adjacency.empty()) return {};
  return max_clique(adjacency, VertexSet::full(adjacency.size()));
}

}  // namespace median

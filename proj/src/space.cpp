#include "median/space.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>

#include "median/clique.hpp"

namespace median {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonMedian: return "NonMedian";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::InconsistentWeights: return "InconsistentWeights";
    case ErrorKind::NonGeodesicEdge: return "NonGeodesicEdge";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::PrecondViolated: return "PrecondViolated";
    case ErrorKind::NotStronglySeparated: return "NotStronglySeparated";
    case ErrorKind::NotInHull: return "NotInHull";
    case ErrorKind::IntersectionNotSingleton: return "IntersectionNotSingleton";
    case ErrorKind::NoFamilyFound: return "NoFamilyFound";
    case ErrorKind::TooLargeForBruteForce: return "TooLargeForBruteForce";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::EmptySet: return "EmptySet";
  }
  return "Unknown";
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

using Adjacency = std::vector<std::vector<std::pair<PointId, std::size_t>>>;  // (neighbour, edge index)

std::vector<std::string> triple_names(const RawSpace& raw, PointId a, PointId b, PointId c) {
  return {raw.points[a], raw.points[b], raw.points[c]};
}

// All-pairs shortest paths, exact.
std::vector<Rational> shortest_paths(const RawSpace& raw, const Adjacency& adj) {
  std::size_t n = raw.points.size();
  std::vector<Rational> dist(n * n);
  using Item = std::pair<Rational, PointId>;
  for (PointId s = 0; s < n; ++s) {
    std::vector<bool> done(n, false);
    std::vector<std::optional<Rational>> best(n);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    best[s] = Rational(0);
    pq.emplace(Rational(0), s);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = true;
      dist[s * n + u] = d;
      for (auto [v, e] : adj[u]) {
        Rational nd = d + raw.edges[e].weight;
        if (!best[v] || nd < *best[v]) {
          best[v] = nd;
          pq.emplace(nd, v);
        }
      }
    }
  }
  return dist;
}

// Interval bitsets from the metric: x in [a,b] iff d(a,x)+d(x,b) = d(a,b).
std::vector<PointSet> metric_intervals(std::size_t n, const std::vector<Rational>& dist) {
  std::vector<PointSet> iv(n * n, PointSet(n));
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a; b < n; ++b) {
      PointSet s(n);
      const Rational& dab = dist[a * n + b];
      for (PointId x = 0; x < n; ++x)
        if (dist[a * n + x] + dist[x * n + b] == dab) s.set(x);
      iv[a * n + b] = s;
      iv[b * n + a] = s;
    }
  return iv;
}

// First triple whose three pairwise intervals do not meet in exactly one point.
std::optional<std::array<PointId, 4>> find_bad_triple(std::size_t n, const std::vector<PointSet>& iv) {
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b)
      for (PointId c = b + 1; c < n; ++c) {
        PointSet m = iv[a * n + b] & iv[b * n + c] & iv[a * n + c];
        std::size_t k = m.count();
        if (k != 1) return std::array<PointId, 4>{a, b, c, k};
      }
  return std::nullopt;
}

[[noreturn]] void throw_bad_triple(const RawSpace& raw, const std::array<PointId, 4>& t) {
  throw Error(ErrorKind::NonMedian,
              "triple (" + raw.points[t[0]] + ", " + raw.points[t[1]] + ", " + raw.points[t[2]] + ") has " +
                  std::to_string(t[3]) + " medians",
              triple_names(raw, t[0], t[1], t[2]));
}

// Used when a structural test fails on a large graph: look for a concrete witness.
[[noreturn]] void fail_non_median(const RawSpace& raw, const std::vector<Rational>& dist, const std::string& why,
                                  std::vector<std::string> witness) {
  std::size_t n = raw.points.size();
  auto iv = metric_intervals(n, dist);
  if (auto t = find_bad_triple(n, iv)) throw_bad_triple(raw, *t);
  throw Error(ErrorKind::NonMedian, why, std::move(witness));
}

std::vector<std::uint32_t> table_intervals(std::size_t n, const std::vector<PointId>& table) {
  std::vector<std::uint32_t> iv(n * n, 0);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b)
      for (PointId x = 0; x < n; ++x)
        if (table[(a * n + b) * n + x] == x) iv[a * n + b] |= std::uint32_t{1} << x;
  return iv;
}

bool convex_mask(std::uint32_t set, std::size_t n, const std::vector<std::uint32_t>& iv) {
  for (PointId a = 0; a < n; ++a) {
    if (!(set >> a & 1U)) continue;
    for (PointId b = a + 1; b < n; ++b)
      if ((set >> b & 1U) && (iv[a * n + b] & ~set)) return false;
  }
  return true;
}

// Bipartitions into two convex sides; returns the sides without point 0.
std::vector<std::uint32_t> bipartition_walls(std::size_t n, const std::vector<std::uint32_t>& iv) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  for (std::uint32_t rest = 0; rest < (std::uint32_t{1} << (n - 1)); ++rest) {
    std::uint32_t side0 = 1U | (rest << 1);
    std::uint32_t side1 = all & ~side0;
    if (!side1) continue;
    if (convex_mask(side0, n, iv) && convex_mask(side1, n, iv)) out.push_back(side1);
  }
  return out;
}

PointSet mask_to_set(std::size_t n, std::uint32_t mask) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1U) s.set(i);
  return s;
}

}  // namespace

class SpaceBuilder {
 public:
  static MedianSpace build(RawSpace raw) {
    MedianSpace s;
    check_common(raw);
    s.raw_ = std::move(raw);
    if (s.raw_.form == Form::graph)
      build_graph(s);
    else
      build_table(s);
    s.finish();
    return s;
  }

 private:
  static void check_common(const RawSpace& raw) {
    if (raw.points.empty()) throw Error(ErrorKind::BadParams, "space has no points");
    std::unordered_map<std::string, PointId> seen;
    for (PointId i = 0; i < raw.points.size(); ++i) {
      if (raw.points[i].empty()) throw Error(ErrorKind::BadParams, "empty point name");
      if (!seen.emplace(raw.points[i], i).second)
        throw Error(ErrorKind::BadParams, "duplicate point name '" + raw.points[i] + "'", {raw.points[i]});
    }
  }

  static void build_graph(MedianSpace& s) {
    const RawSpace& raw = s.raw_;
    std::size_t n = raw.points.size();
    Adjacency adj(n);
    for (std::size_t e = 0; e < raw.edges.size(); ++e) {
      const RawEdge& ed = raw.edges[e];
      if (ed.u >= n || ed.v >= n) throw Error(ErrorKind::BadParams, "edge endpoint out of range");
      if (ed.u == ed.v) throw Error(ErrorKind::BadParams, "self-loop at '" + raw.points[ed.u] + "'", {raw.points[ed.u]});
      if (ed.weight.sign() <= 0)
        throw Error(ErrorKind::NonPositiveWeight,
                    "edge " + raw.points[ed.u] + "-" + raw.points[ed.v] + " has weight " + ed.weight.str(),
                    {raw.points[ed.u], raw.points[ed.v]});
      adj[ed.u].emplace_back(ed.v, e);
      adj[ed.v].emplace_back(ed.u, e);
    }

    std::vector<bool> reached(n, false);
    std::vector<PointId> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
      PointId u = stack.back();
      stack.pop_back();
      for (auto [v, e] : adj[u])
        if (!reached[v]) {
          reached[v] = true;
          stack.push_back(v);
        }
    }
    for (PointId p = 0; p < n; ++p)
      if (!reached[p])
        throw Error(ErrorKind::Disconnected, "no path from '" + raw.points[0] + "' to '" + raw.points[p] + "'",
                    {raw.points[0], raw.points[p]});

    s.dist_ = shortest_paths(raw, adj);
    const auto& dist = s.dist_;
    auto d = [&](PointId a, PointId b) -> const Rational& { return dist[a * n + b]; };

    for (const RawEdge& ed : raw.edges)
      if (ed.weight != d(ed.u, ed.v))
        throw Error(ErrorKind::NonGeodesicEdge,
                    "edge " + raw.points[ed.u] + "-" + raw.points[ed.v] + " of weight " + ed.weight.str() +
                        " is longer than the distance " + d(ed.u, ed.v).str(),
                    {raw.points[ed.u], raw.points[ed.v]});

    if (n <= kDirectTripleLimit) {
      auto iv = metric_intervals(n, dist);
      if (auto t = find_bad_triple(n, iv)) throw_bad_triple(raw, *t);
    }

    // Djokovic-Winkler classes.
    std::size_t m = raw.edges.size();
    UnionFind uf(m);
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t f = e + 1; f < m; ++f) {
        const RawEdge& a = raw.edges[e];
        const RawEdge& b = raw.edges[f];
        if (d(a.u, b.u) + d(a.v, b.v) != d(a.u, b.v) + d(a.v, b.u)) uf.unite(e, f);
      }
    std::vector<std::vector<std::size_t>> classes;
    std::unordered_map<std::size_t, std::size_t> class_of_root;
    for (std::size_t e = 0; e < m; ++e) {
      auto [it, fresh] = class_of_root.emplace(uf.find(e), classes.size());
      if (fresh) classes.emplace_back();
      classes[it->second].push_back(e);
    }

    for (const auto& cls : classes) {
      const RawEdge& first = raw.edges[cls.front()];
      for (std::size_t e : cls) {
        const RawEdge& ed = raw.edges[e];
        if (ed.weight != first.weight)
          throw Error(ErrorKind::InconsistentWeights,
                      "edges " + raw.points[first.u] + "-" + raw.points[first.v] + " and " + raw.points[ed.u] + "-" +
                          raw.points[ed.v] + " cross one wall with weights " + first.weight.str() + " and " +
                          ed.weight.str(),
                      {raw.points[first.u], raw.points[first.v], raw.points[ed.u], raw.points[ed.v]});
      }
      std::vector<bool> in_class(m, false);
      for (std::size_t e : cls) in_class[e] = true;
      // Component of point 0 after deleting the class.
      PointSet side0(n);
      side0.set(0);
      std::vector<PointId> st{0};
      while (!st.empty()) {
        PointId u = st.back();
        st.pop_back();
        for (auto [v, e] : adj[u])
          if (!in_class[e] && !side0.test(v)) {
            side0.set(v);
            st.push_back(v);
          }
      }
      PointSet side1 = side0.complement();
      std::vector<std::string> edge_witness{raw.points[first.u], raw.points[first.v]};
      if (side1.empty()) fail_non_median(raw, dist, "edge class does not disconnect the graph", edge_witness);
      for (std::size_t e : cls)
        if (side0.test(raw.edges[e].u) == side0.test(raw.edges[e].v))
          fail_non_median(raw, dist, "edge class does not cut the graph into two sides", edge_witness);
      // The far side must be connected on its own.
      PointSet reach(n);
      PointId start = *side1.first();
      reach.set(start);
      st.push_back(start);
      while (!st.empty()) {
        PointId u = st.back();
        st.pop_back();
        for (auto [v, e] : adj[u])
          if (!in_class[e] && side1.test(v) && !reach.test(v)) {
            reach.set(v);
            st.push_back(v);
          }
      }
      if (reach != side1) fail_non_median(raw, dist, "edge class leaves more than two components", edge_witness);
      s.walls_.push_back(Wall{first.weight, side1});
    }

    // Isometric embedding: d equals the weight of the separating walls.
    std::size_t w = s.walls_.size();
    std::vector<WallMask> sig(n, WallMask(w));
    for (WallId k = 0; k < w; ++k) s.walls_[k].upper.for_each([&](PointId p) { sig[p].set(k); });
    for (PointId a = 0; a < n; ++a)
      for (PointId b = a + 1; b < n; ++b) {
        Rational total(0);
        (sig[a] ^ sig[b]).for_each([&](WallId k) { total += s.walls_[k].weight; });
        if (total != d(a, b))
          fail_non_median(raw, dist, "distance between '" + raw.points[a] + "' and '" + raw.points[b] +
                                         "' differs from the weight of separating walls",
                          {raw.points[a], raw.points[b]});
      }

    if (n > kDirectTripleLimit) {
      std::unordered_map<WallMask, PointId, IndexSetHash> by_sig;
      for (PointId p = 0; p < n; ++p) by_sig.emplace(sig[p], p);
      for (PointId a = 0; a < n; ++a)
        for (PointId b = a + 1; b < n; ++b) {
          WallMask ab = sig[a] & sig[b];
          WallMask aob = sig[a] | sig[b];
          for (PointId c = b + 1; c < n; ++c) {
            WallMask maj = ab | (aob & sig[c]);
            if (!by_sig.count(maj)) throw_bad_triple(raw, {a, b, c, 0});
          }
        }
    }
  }

  static void build_table(MedianSpace& s) {
    const RawSpace& raw = s.raw_;
    std::size_t n = raw.points.size();
    if (n > kTableFormLimit)
      throw Error(ErrorKind::TooLargeForBruteForce,
                  "table form supports at most " + std::to_string(kTableFormLimit) + " points");
    const PointId unset = n;
    std::vector<PointId> t(n * n * n, unset);
    auto at = [&](PointId a, PointId b, PointId c) -> PointId& { return t[(a * n + b) * n + c]; };
    for (const MedianRow& r : raw.rows) {
      for (PointId p : r)
        if (p >= n) throw Error(ErrorKind::BadParams, "median row refers to an unknown point");
      std::array<PointId, 3> perm{r[0], r[1], r[2]};
      std::sort(perm.begin(), perm.end());
      do {
        PointId& slot = at(perm[0], perm[1], perm[2]);
        if (slot != unset && slot != r[3])
          throw Error(ErrorKind::NonMedian, "conflicting median rows for (" + raw.points[r[0]] + ", " +
                                                raw.points[r[1]] + ", " + raw.points[r[2]] + ")",
                      triple_names(raw, r[0], r[1], r[2]));
        slot = r[3];
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (PointId x = 0; x < n; ++x)
      for (PointId y = 0; y < n; ++y) {
        for (auto* slot : {&at(x, x, y), &at(x, y, x), &at(y, x, x)}) {
          if (*slot == unset) *slot = x;
          if (*slot != x)
            throw Error(ErrorKind::NonMedian,
                        "m(" + raw.points[x] + ", " + raw.points[x] + ", " + raw.points[y] + ") is not " + raw.points[x],
                        triple_names(raw, x, x, y));
        }
      }
    for (PointId a = 0; a < n; ++a)
      for (PointId b = 0; b < n; ++b)
        for (PointId c = 0; c < n; ++c)
          if (at(a, b, c) == unset)
            throw Error(ErrorKind::IncompleteTable,
                        "no median given for (" + raw.points[a] + ", " + raw.points[b] + ", " + raw.points[c] + ")",
                        triple_names(raw, a, b, c));

    for (PointId x = 0; x < n; ++x)
      for (PointId y = 0; y < n; ++y)
        for (PointId z = 0; z < n; ++z) {
          PointId mxyz = at(x, y, z);
          for (PointId u = 0; u < n; ++u)
            for (PointId v = 0; v < n; ++v)
              if (at(mxyz, u, v) != at(x, at(y, u, v), at(z, u, v)))
                throw Error(ErrorKind::NonMedian, "distributivity fails",
                            {raw.points[x], raw.points[y], raw.points[z], raw.points[u], raw.points[v]});
        }

    auto iv = table_intervals(n, t);
    for (PointId a = 0; a < n; ++a)
      for (PointId b = a + 1; b < n; ++b)
        for (PointId c = b + 1; c < n; ++c) {
          std::uint32_t common = iv[a * n + b] & iv[b * n + c] & iv[a * n + c];
          if (std::popcount(common) != 1 || !(common >> at(a, b, c) & 1U))
            throw_bad_triple(raw, {a, b, c, static_cast<std::size_t>(std::popcount(common))});
        }

    for (std::uint32_t side1 : bipartition_walls(n, iv)) s.walls_.push_back(Wall{Rational(1), mask_to_set(n, side1)});

    std::size_t w = s.walls_.size();
    std::vector<WallMask> sig(n, WallMask(w));
    for (WallId k = 0; k < w; ++k) s.walls_[k].upper.for_each([&](PointId p) { sig[p].set(k); });
    s.dist_.assign(n * n, Rational(0));
    for (PointId a = 0; a < n; ++a)
      for (PointId b = 0; b < n; ++b) s.dist_[a * n + b] = Rational(static_cast<std::int64_t>((sig[a] ^ sig[b]).count()));
    for (PointId a = 0; a < n; ++a)
      for (PointId b = 0; b < n; ++b)
        for (PointId c = 0; c < n; ++c) {
          WallMask maj = (sig[a] & sig[b]) | (sig[a] & sig[c]) | (sig[b] & sig[c]);
          if (maj != sig[at(a, b, c)]) throw_bad_triple(raw, {a, b, c, 1});
        }
    s.table_ = std::move(t);
  }
};

void MedianSpace::finish() {
  std::size_t n = raw_.points.size();
  names_ = raw_.points;
  for (PointId i = 0; i < n; ++i) index_.emplace(names_[i], i);

  auto signatures = [&] {
    std::size_t w = walls_.size();
    sig_.assign(n, WallMask(w));
    for (WallId k = 0; k < w; ++k) walls_[k].upper.for_each([&](PointId p) { sig_[p].set(k); });
  };
  signatures();

  // Deterministic wall order: by the smallest point on a crossing edge, then by side.
  std::vector<PointId> min_incident(walls_.size(), n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      WallMask diff = sig_[a] ^ sig_[b];
      if (diff.count() == 1) {
        WallId k = *diff.first();
        min_incident[k] = std::min(min_incident[k], a);
      }
    }
  std::vector<WallId> order(walls_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](WallId x, WallId y) {
    if (min_incident[x] != min_incident[y]) return min_incident[x] < min_incident[y];
    return walls_[x].upper < walls_[y].upper;
  });
  std::vector<Wall> sorted;
  sorted.reserve(walls_.size());
  for (WallId k : order) sorted.push_back(walls_[k]);
  walls_ = std::move(sorted);
  signatures();

  for (PointId p = 0; p < n; ++p) {
    bool fresh = by_sig_.emplace(sig_[p], p).second;
    ensure(fresh, "walls separate all points");
  }

  adjacency_.assign(n, {});
  skeleton_.clear();
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      WallMask diff = sig_[a] ^ sig_[b];
      if (diff.count() == 1) {
        WallId k = *diff.first();
        skeleton_.push_back({a, b, k});
        adjacency_[a].emplace_back(b, k);
        adjacency_[b].emplace_back(a, k);
      }
    }

  std::size_t w = walls_.size();
  transverse_.assign(w, WallMask(w));
  std::vector<VertexSet> graph(w, VertexSet(w));
  for (WallId a = 0; a < w; ++a)
    for (WallId b = a + 1; b < w; ++b) {
      const PointSet& ua = walls_[a].upper;
      const PointSet& ub = walls_[b].upper;
      bool all_four = ua.intersects(ub) && (ua - ub).any() && (ub - ua).any() && (ua | ub).complement().any();
      if (all_four) {
        transverse_[a].set(b);
        transverse_[b].set(a);
        graph[a].set(b);
        graph[b].set(a);
      }
    }
  rank_ = max_clique(graph).size();
}

MedianSpace MedianSpace::build(RawSpace raw) { return SpaceBuilder::build(std::move(raw)); }

std::optional<PointId> MedianSpace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointId MedianSpace::at(std::string_view name) const {
  if (auto p = find(name)) return *p;
  throw Error(ErrorKind::BadParams, "unknown point '" + std::string(name) + "'", {std::string(name)});
}

std::vector<std::string> MedianSpace::names(const PointSet& s) const {
  std::vector<std::string> out;
  s.for_each([&](PointId p) { out.push_back(names_[p]); });
  return out;
}

std::optional<PointId> MedianSpace::lookup(const WallMask& signature) const {
  auto it = by_sig_.find(signature);
  if (it == by_sig_.end()) return std::nullopt;
  return it->second;
}

PointId MedianSpace::median(PointId a, PointId b, PointId c) const {
  std::size_t n = size();
  if (!table_.empty()) return table_[(a * n + b) * n + c];
  WallMask maj = (sig_[a] & sig_[b]) | (sig_[c] & (sig_[a] | sig_[b]));
  auto p = lookup(maj);
  ensure(p.has_value(), "median closure");
  return *p;
}

PointSet MedianSpace::members(Halfspace h) const {
  const PointSet& up = walls_.at(h.wall).upper;
  return h.upper ? up : up.complement();
}

Rational MedianSpace::measure(const WallMask& walls) const {
  Rational total(0);
  walls.for_each([&](WallId k) { total += walls_[k].weight; });
  return total;
}

Diagnostics validate_space(const RawSpace& raw) {
  Diagnostics diag;
  try {
    (void)MedianSpace::build(raw);
  } catch (const Error& e) {
    diag.ok = false;
    diag.kind = e.kind();
    diag.message = e.what();
    diag.witness = e.witness();
  }
  return diag;
}

std::vector<PointSet> brute_force_walls(const MedianSpace& s) {
  std::size_t n = s.size();
  if (n > 22) throw Error(ErrorKind::TooLargeForBruteForce, "bipartition search is limited to 22 points");
  std::vector<PointId> t(n * n * n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b)
      for (PointId c = 0; c < n; ++c) t[(a * n + b) * n + c] = s.median(a, b, c);
  auto iv = table_intervals(n, t);
  std::vector<PointSet> out;
  for (std::uint32_t side1 : bipartition_walls(n, iv)) out.push_back(mask_to_set(n, side1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace median

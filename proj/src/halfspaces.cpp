#include "median/halfspaces.hpp"

#include <algorithm>

#include "median/clique.hpp"

namespace median {

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::equal: return "equal";
    case PairKind::complementary: return "complementary";
    case PairKind::nested: return "nested";
    case PairKind::disjoint: return "disjoint";
    case PairKind::transverse: return "transverse";
    case PairKind::covering: return "covering";
  }
  return "unknown";
}

std::vector<Halfspace> all_halfspaces(const MedianSpace& s) {
  std::vector<Halfspace> out;
  out.reserve(2 * s.wall_count());
  for (WallId w = 0; w < s.wall_count(); ++w) {
    out.push_back({w, false});
    out.push_back({w, true});
  }
  return out;
}

std::string label(Halfspace h) { return "w" + std::to_string(h.wall) + (h.upper ? "+" : "-"); }

PairClass classify_pair(const MedianSpace& s, Halfspace h1, Halfspace h2) {
  if (h1.wall == h2.wall) return {h1.upper == h2.upper ? PairKind::equal : PairKind::complementary, false};
  if (s.transverse(h1.wall, h2.wall)) return {PairKind::transverse, false};
  PointSet a = s.members(h1);
  PointSet b = s.members(h2);
  if (!a.intersects(b)) return {PairKind::disjoint, false};
  if (a.subset_of(b)) return {PairKind::nested, true};
  if (b.subset_of(a)) return {PairKind::nested, false};
  return {PairKind::covering, false};
}

bool transverse(const MedianSpace& s, Halfspace h1, Halfspace h2) {
  return h1.wall != h2.wall && s.transverse(h1.wall, h2.wall);
}

bool disjoint(const MedianSpace& s, Halfspace h1, Halfspace h2) {
  return !s.members(h1).intersects(s.members(h2));
}

bool splits(const MedianSpace& s, Halfspace h, const PointSet& a) {
  bool in = false;
  bool out = false;
  a.for_each([&](PointId p) { (s.contains(h, p) ? in : out) = true; });
  return in && out;
}

WallSet wall_interval(const MedianSpace& s, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySet, "wall interval needs nonempty sets");
  // Walls on which every member of the set sits on the upper (all_up) or lower (all_low) side.
  auto sides = [&](const PointSet& x) {
    WallMask all_up = WallMask::full(s.wall_count());
    WallMask any_up(s.wall_count());
    x.for_each([&](PointId p) {
      all_up &= s.signature(p);
      any_up |= s.signature(p);
    });
    return std::pair{all_up, any_up.complement()};
  };
  auto [a1, a0] = sides(a);
  auto [b1, b0] = sides(b);
  WallSet ws{(a1 & b0) | (a0 & b1), Rational(0)};
  ws.measure = s.measure(ws.walls);
  if (a.count() == 1 && b.count() == 1)
    ensure(ws.measure == s.dist(*a.first(), *b.first()), "wall measure equals distance");
  return ws;
}

PointSet boundary(const MedianSpace& s, Halfspace h) {
  PointSet out(s.size());
  for (const SkeletonEdge& e : s.skeleton()) {
    if (e.wall != h.wall) continue;
    out.set(s.contains(h, e.u) ? e.u : e.v);
  }
  ensure(is_convex(s, out), "boundary is convex");
  if (s.rank() >= 1 && out.count() >= 2) ensure(subspace_rank(s, out) < s.rank(), "boundary has lower rank");
  return out;
}

Rational depth(const MedianSpace& s, Halfspace h, const PointSet& a, DepthForm form) {
  PointSet inside = s.members(h) & a;
  if (inside.empty()) throw Error(ErrorKind::EmptyIntersection, "halfspace " + label(h) + " misses the set");
  ConvexSet target = form == DepthForm::complement ? ConvexSet::make(s, s.members(h.complement()))
                                                   : ConvexSet::make(s, boundary(s, h));
  Rational best(0);
  inside.for_each([&](PointId x) { best = max(best, distance(target, x)); });
  return best;
}

std::size_t subspace_rank(const MedianSpace& s, const PointSet& c) {
  std::vector<WallId> split;
  for (WallId w = 0; w < s.wall_count(); ++w)
    if (splits(s, {w, true}, c)) split.push_back(w);
  std::size_t k = split.size();
  std::vector<VertexSet> graph(k, VertexSet(k));
  for (std::size_t i = 0; i < k; ++i) {
    PointSet ui = s.walls()[split[i]].upper & c;
    PointSet li = c - ui;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!s.transverse(split[i], split[j])) continue;
      PointSet uj = s.walls()[split[j]].upper;
      bool four = ui.intersects(uj) && (ui - uj).any() && li.intersects(uj) && (li - uj).any();
      if (four) {
        graph[i].set(j);
        graph[j].set(i);
      }
    }
  }
  return max_clique(graph).size();
}

std::vector<Halfspace> branched_at(const MedianSpace& s, PointId x) {
  std::vector<Halfspace> out;
  for (auto [y, w] : s.neighbours(x)) {
    out.push_back({w, false});
    out.push_back({w, true});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<Halfspace> sorted_unique(std::span<const Halfspace> hs) {
  std::vector<Halfspace> v(hs.begin(), hs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

constexpr std::size_t kStrongTripleLimit = 5'000'000;

std::optional<PointId> common_median(const MedianSpace& s, const std::array<PointSet, 3>& m) {
  std::size_t work = m[0].count() * m[1].count() * m[2].count();
  if (work > kStrongTripleLimit)
    throw Error(ErrorKind::TooLargeForBruteForce, "strong facing triple check needs " + std::to_string(work) + " medians");
  std::optional<PointId> centre;
  bool same = true;
  auto e0 = m[0].elements();
  auto e1 = m[1].elements();
  auto e2 = m[2].elements();
  for (PointId a : e0) {
    for (PointId b : e1) {
      for (PointId c : e2) {
        PointId med = s.median(a, b, c);
        if (!centre) centre = med;
        if (*centre != med) {
          same = false;
          break;
        }
      }
      if (!same) break;
    }
    if (!same) break;
  }
  if (!same) return std::nullopt;
  return centre;
}

}  // namespace

std::optional<FacingTriple> facing_triple(const MedianSpace& s, std::span<const Halfspace> hs, bool strong) {
  auto v = sorted_unique(hs);
  std::vector<PointSet> mem;
  mem.reserve(v.size());
  for (Halfspace h : v) mem.push_back(s.members(h));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (mem[i].intersects(mem[j])) continue;
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        if (mem[i].intersects(mem[k]) || mem[j].intersects(mem[k])) continue;
        FacingTriple t{{v[i], v[j], v[k]}, std::nullopt};
        if (!strong) return t;
        ConvexSet ci = ConvexSet::make(s, mem[i]);
        ConvexSet cj = ConvexSet::make(s, mem[j]);
        ConvexSet ck = ConvexSet::make(s, mem[k]);
        if (!strongly_separated(ci, cj) || !strongly_separated(ci, ck) || !strongly_separated(cj, ck)) continue;
        if (auto c = common_median(s, {mem[i], mem[j], mem[k]})) {
          t.centre = c;
          return t;
        }
      }
    }
  return std::nullopt;
}

bool strongly_separated(const ConvexSet& c1, const ConvexSet& c2) {
  if (c1.members().intersects(c2.members()))
    throw Error(ErrorKind::NotDisjoint, "sets are not disjoint", c1.space().names(c1.members() & c2.members()));
  bool none = !c1.split_walls().intersects(c2.split_walls());
  bool singletons = gate_image(c1, c2.members()).count() == 1 && gate_image(c2, c1.members()).count() == 1;
  ensure(none == singletons, "strong separation matches singleton gates");
  return none;
}

namespace {

std::vector<Halfspace> clique_family(std::span<const Halfspace> v, const std::vector<VertexSet>& graph) {
  std::vector<Halfspace> out;
  for (std::size_t i : max_clique(graph)) out.push_back(v[i]);
  return out;
}

}  // namespace

std::vector<Halfspace> extract_disjoint_family(const MedianSpace& s, std::span<const Halfspace> hs) {
  auto v = sorted_unique(hs);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      PairKind k = classify_pair(s, v[i], v[j]).kind;
      if (k != PairKind::transverse && k != PairKind::disjoint && k != PairKind::complementary)
        throw Error(ErrorKind::PrecondViolated,
                    label(v[i]) + " and " + label(v[j]) + " are " + std::string(to_string(k)),
                    {label(v[i]), label(v[j])});
    }
  return max_disjoint_family(s, v);
}

std::vector<Halfspace> max_disjoint_family(const MedianSpace& s, std::span<const Halfspace> hs) {
  auto v = sorted_unique(hs);
  std::size_t k = v.size();
  std::vector<PointSet> mem;
  for (Halfspace h : v) mem.push_back(s.members(h));
  std::vector<VertexSet> graph(k, VertexSet(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (!mem[i].intersects(mem[j])) {
        graph[i].set(j);
        graph[j].set(i);
      }
  return clique_family(v, graph);
}

std::vector<Halfspace> max_transverse_family(const MedianSpace& s, std::span<const Halfspace> hs) {
  auto v = sorted_unique(hs);
  std::size_t k = v.size();
  std::vector<VertexSet> graph(k, VertexSet(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (transverse(s, v[i], v[j])) {
        graph[i].set(j);
        graph[j].set(i);
      }
  return clique_family(v, graph);
}

}  // namespace median

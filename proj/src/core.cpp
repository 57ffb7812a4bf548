#include "median/core.hpp"

namespace median {
namespace {

void require_nonempty(const PointSet& a, const char* what) {
  if (a.empty()) throw Error(ErrorKind::EmptySet, std::string(what) + " must be nonempty");
}

struct Profile {
  WallMask up;
  WallMask low;
};

Profile profile_of(const MedianSpace& s, const PointSet& a) {
  Profile pr{WallMask(s.wall_count()), WallMask(s.wall_count())};
  WallMask all = WallMask::full(s.wall_count());
  a.for_each([&](PointId p) {
    pr.up |= s.signature(p);
    pr.low |= all - s.signature(p);
  });
  return pr;
}

}  // namespace

ConvexSet::ConvexSet(const MedianSpace& s, PointSet members) : space_(&s), members_(std::move(members)) {
  Profile pr = profile_of(s, members_);
  upper_ = std::move(pr.up);
  lower_ = std::move(pr.low);
}

ConvexSet ConvexSet::make(const MedianSpace& s, PointSet members) {
  require_nonempty(members, "convex set");
  if (!is_convex(s, members)) throw Error(ErrorKind::NotConvex, "set is not convex", s.names(members));
  return ConvexSet(s, std::move(members));
}

PointSet interval(const MedianSpace& s, PointId a, PointId b) {
  PointSet out(s.size());
  auto wa = s.signature(a).words();
  auto wb = s.signature(b).words();
  for (PointId x = 0; x < s.size(); ++x) {
    auto wx = s.signature(x).words();
    bool inside = true;
    for (std::size_t k = 0; k < wx.size() && inside; ++k) inside = ((wx[k] ^ wa[k]) & (wx[k] ^ wb[k])) == 0;
    if (inside) out.set(x);
  }
  return out;
}

PointSet metric_interval(const MedianSpace& s, PointId a, PointId b) {
  PointSet out(s.size());
  const Rational& dab = s.dist(a, b);
  for (PointId x = 0; x < s.size(); ++x)
    if (s.dist(a, x) + s.dist(x, b) == dab) out.set(x);
  return out;
}

PointSet join(const MedianSpace& s, const PointSet& a, const PointSet& b) {
  require_nonempty(a, "join argument");
  require_nonempty(b, "join argument");
  PointSet out = a | b;
  bool same = a == b;
  a.for_each([&](PointId x) {
    b.for_each([&](PointId y) {
      if (same && y <= x) return;
      out |= interval(s, x, y);
    });
  });
  return out;
}

HullResult iterated_join_hull(const MedianSpace& s, const PointSet& a) {
  require_nonempty(a, "hull argument");
  HullResult r{a, 0};
  for (;;) {
    PointSet next = join(s, r.members, r.members);
    if (next == r.members) break;
    r.members = std::move(next);
    ++r.iterations;
  }
  return r;
}

PointSet halfspace_hull(const MedianSpace& s, const PointSet& a) {
  require_nonempty(a, "hull argument");
  Profile pr = profile_of(s, a);
  WallMask fixed1 = pr.up - pr.low;
  WallMask fixed0 = pr.low - pr.up;
  PointSet out(s.size());
  for (PointId p = 0; p < s.size(); ++p) {
    const WallMask& sp = s.signature(p);
    if (fixed1.subset_of(sp) && !sp.intersects(fixed0)) out.set(p);
  }
  return out;
}

ConvexSet convex_hull(const MedianSpace& s, const PointSet& a) {
  HullResult r = iterated_join_hull(s, a);
  ensure(r.iterations <= s.rank(), "iterated join reaches the hull within rank steps");
  ensure(r.members == halfspace_hull(s, a), "iterated join hull equals the halfspace hull");
  return ConvexSet::make(s, std::move(r.members));
}

bool is_convex(const MedianSpace& s, const PointSet& a) {
  if (a.empty()) return true;
  return halfspace_hull(s, a) == a;
}

PointId gate_project(const ConvexSet& c, PointId x) {
  const MedianSpace& s = c.space();
  WallMask fixed1 = c.meets_upper() - c.meets_lower();
  WallMask fixed0 = c.meets_lower() - c.meets_upper();
  WallMask sig = (s.signature(x) - fixed0) | fixed1;
  auto p = s.lookup(sig);
  ensure(p.has_value() && c.contains(*p), "gate lies in the convex set");
  return *p;
}

PointSet gate_image(const ConvexSet& c, const PointSet& a) {
  PointSet out(c.space().size());
  a.for_each([&](PointId x) { out.set(gate_project(c, x)); });
  return out;
}

Rational distance(const MedianSpace& s, PointId x, const PointSet& a) {
  require_nonempty(a, "target set");
  std::optional<Rational> best;
  a.for_each([&](PointId y) {
    if (!best || s.dist(x, y) < *best) best = s.dist(x, y);
  });
  return *best;
}

Rational distance(const ConvexSet& c, PointId x) {
  const MedianSpace& s = c.space();
  WallMask fixed1 = c.meets_upper() - c.meets_lower();
  WallMask fixed0 = c.meets_lower() - c.meets_upper();
  const WallMask& sx = s.signature(x);
  return s.measure((fixed1 - sx) | (sx & fixed0));
}

Rational set_distance(const MedianSpace& s, const PointSet& a, const PointSet& b) {
  require_nonempty(a, "set");
  std::optional<Rational> best;
  a.for_each([&](PointId x) {
    Rational d = distance(s, x, b);
    if (!best || d < *best) best = d;
  });
  return *best;
}

Rational hausdorff_distance(const MedianSpace& s, const PointSet& a, const PointSet& b) {
  require_nonempty(a, "set");
  require_nonempty(b, "set");
  Rational worst(0);
  a.for_each([&](PointId x) { worst = max(worst, distance(s, x, b)); });
  b.for_each([&](PointId y) { worst = max(worst, distance(s, y, a)); });
  return worst;
}

PointSet neighbourhood(const MedianSpace& s, const PointSet& a, const Rational& r) {
  require_nonempty(a, "set");
  PointSet out(s.size());
  for (PointId x = 0; x < s.size(); ++x)
    if (distance(s, x, a) <= r) out.set(x);
  return out;
}

PointSet helly_intersection(const MedianSpace& s, std::span<const ConvexSet> sets) {
  if (sets.empty()) throw Error(ErrorKind::EmptySet, "no sets to intersect");
  PointSet out = s.all();
  bool pairwise = true;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out &= sets[i].members();
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!sets[i].members().intersects(sets[j].members())) pairwise = false;
  }
  if (pairwise) ensure(out.any(), "pairwise intersecting convex sets have a common point");
  return out;
}

WallMask separating_walls(const MedianSpace& s, PointId x, PointId y) { return s.signature(x) ^ s.signature(y); }

}  // namespace median

#include "median/structure.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace median {

ProductCheck check_product_map(const MedianSpace& s, const PointSet& domain, std::span<const ConvexSet> projections,
                               std::span<const PointSet> factors) {
  ensure(projections.size() == factors.size(), "one factor per projection");
  ProductCheck r;
  r.domain_size = domain.count();
  r.product_size = 1;
  std::vector<std::vector<std::size_t>> position(factors.size(), std::vector<std::size_t>(s.size(), 0));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::size_t k = 0;
    factors[i].for_each([&](PointId p) { position[i][p] = k++; });
    r.product_size *= factors[i].count();
  }

  std::vector<PointId> points = domain.elements();
  std::vector<std::vector<PointId>> image(points.size(), std::vector<PointId>(projections.size()));
  std::unordered_set<std::size_t> codes;
  bool inside = true;
  for (std::size_t a = 0; a < points.size(); ++a) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < projections.size(); ++i) {
      PointId g = gate_project(projections[i], points[a]);
      image[a][i] = g;
      if (!factors[i].test(g)) inside = false;
      code = code * factors[i].count() + position[i][g];
    }
    codes.insert(code);
  }
  r.injective = inside && codes.size() == points.size();
  r.surjective = inside && codes.size() == r.product_size;

  for (std::size_t a = 0; a < points.size() && !r.defect; ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      Rational sum(0);
      for (std::size_t i = 0; i < projections.size(); ++i) sum += s.dist(image[a][i], image[b][i]);
      if (sum != s.dist(points[a], points[b])) {
        r.defect = IsometryDefect{points[a], points[b], s.dist(points[a], points[b]), sum};
        break;
      }
    }
  return r;
}

namespace {

void describe(Check& c, const MedianSpace& s, const ProductCheck& pc) {
  c.number("domain", pc.domain_size).number("product", pc.product_size);
  if (pc.defect) {
    c.witness = {s.name(pc.defect->a), s.name(pc.defect->b)};
    c.number("distance", pc.defect->source).number("product distance", pc.defect->target);
  }
}

PointSet hull_of_union(const ConvexSet& c1, const ConvexSet& c2) {
  return convex_hull(c1.space(), c1.members() | c2.members()).members();
}

}  // namespace

BridgeResult bridge(const ConvexSet& c1, const ConvexSet& c2) {
  const MedianSpace& s = c1.space();
  BridgeResult out;
  Bridge& b = out.bridge;
  Report& r = out.report;
  b.gate1 = gate_image(c1, c2.members());
  b.gate2 = gate_image(c2, c1.members());
  r.add("gates are convex", "pi_C1(C2) convex", is_convex(s, b.gate1) && is_convex(s, b.gate2));

  ConvexSet g1 = ConvexSet::make(s, b.gate1);
  ConvexSet g2 = ConvexSet::make(s, b.gate2);
  b.base = *b.gate1.first();
  b.partner = gate_project(c2, b.base);
  b.span = interval(s, b.base, b.partner);
  b.distance = s.dist(b.base, b.partner);
  b.strongly_separated = b.gate1.count() == 1 && b.gate2.count() == 1;

  // Mutual projections are inverse isometries between the gates.
  bool mutual = true;
  b.gate1.for_each([&](PointId x) {
    PointId y = gate_project(c2, x);
    if (!b.gate2.test(y) || gate_project(c1, y) != x) mutual = false;
    b.gate1.for_each([&](PointId z) {
      if (s.dist(x, z) != s.dist(y, gate_project(c2, z))) mutual = false;
    });
  });
  r.add("gates are isometric via projection", "pi_C2 : pi_C1(C2) -> pi_C2(C1) isometry", mutual);

  Check& d = r.add("gate distance is the set distance", "d(C1,C2) = d(x, pi_C2(x))",
                   b.distance == set_distance(s, c1.members(), c2.members()));
  d.number("distance", b.distance);

  PointSet hull = convex_hull(s, b.gate1 | b.gate2).members();
  ConvexSet span_set = ConvexSet::make(s, b.span);
  std::vector<ConvexSet> proj{g1, span_set};
  std::vector<PointSet> factors{b.gate1, b.span};
  ProductCheck pc = check_product_map(s, hull, proj, factors);
  Check& iso = r.add("hull of gates is a product", "Conv(pi_C1(C2), pi_C2(C1)) = pi_C1(C2) x [x, pi_C2(x)]", pc.ok());
  describe(iso, s, pc);
  return out;
}

Report embed_check(const ConvexSet& c1, const ConvexSet& c2) {
  const MedianSpace& s = c1.space();
  if (c1.members().intersects(c2.members()) || !strongly_separated(c1, c2))
    throw Error(ErrorKind::NotStronglySeparated, "sets are not strongly separated");
  PointId p1 = *gate_image(c1, c2.members()).first();
  PointId p2 = *gate_image(c2, c1.members()).first();
  ConvexSet mid = ConvexSet::make(s, interval(s, p1, p2));
  PointSet hull = hull_of_union(c1, c2);

  Report r;
  std::vector<PointId> pts = hull.elements();
  Rational worst(0);
  std::optional<std::pair<PointId, PointId>> where;
  std::vector<std::array<PointId, 3>> img;
  for (PointId x : pts) img.push_back({gate_project(c1, x), gate_project(c2, x), gate_project(mid, x)});
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++pairs;
      Rational sum = s.dist(img[i][0], img[j][0]) + s.dist(img[i][1], img[j][1]) + s.dist(img[i][2], img[j][2]);
      Rational defect = abs(sum - s.dist(pts[i], pts[j]));
      if (defect > worst) {
        worst = defect;
        where = std::pair{pts[i], pts[j]};
      }
    }
  Check& c = r.add("l1 embedding of the hull", "d(x,y) = d(pi_C1 x, pi_C1 y) + d(pi_C2 x, pi_C2 y) + d(pi_[c1,c2] x, pi_[c1,c2] y)",
                   worst.is_zero());
  c.number("hull points", pts.size()).number("pairs", pairs).number("max defect", worst);
  c.witness = {s.name(p1), s.name(p2)};
  if (where) c.witness = {s.name(where->first), s.name(where->second)};
  return r;
}

Report wall_decomposition_check(const ConvexSet& c1, const ConvexSet& c2, PointId x, PointId y) {
  const MedianSpace& s = c1.space();
  if (c1.members().intersects(c2.members()) || !strongly_separated(c1, c2))
    throw Error(ErrorKind::NotStronglySeparated, "sets are not strongly separated");
  PointSet hull = hull_of_union(c1, c2);
  for (PointId p : {x, y})
    if (!hull.test(p)) throw Error(ErrorKind::NotInHull, "'" + s.name(p) + "' is outside the hull", {s.name(p)});
  PointId p1 = *gate_image(c1, c2.members()).first();
  PointId p2 = *gate_image(c2, c1.members()).first();
  ConvexSet mid = ConvexSet::make(s, interval(s, p1, p2));

  WallMask all = separating_walls(s, x, y);
  WallMask w1 = separating_walls(s, gate_project(c1, x), gate_project(c1, y));
  WallMask w2 = separating_walls(s, gate_project(c2, x), gate_project(c2, y));
  WallMask w3 = separating_walls(s, gate_project(mid, x), gate_project(mid, y));
  bool disjoint_parts = !w1.intersects(w2) && !w1.intersects(w3) && !w2.intersects(w3);
  bool covers = (w1 | w2 | w3) == all;
  Rational m = s.measure(w1) + s.measure(w2) + s.measure(w3);

  Report r;
  const char* anchor = "W(x,y) = W(pi_C1 x, pi_C1 y) ⊔ W(pi_C2 x, pi_C2 y) ⊔ W(pi_[c1,c2] x, pi_[c1,c2] y)";
  Check& c = r.add("wall sets partition W(x,y)", anchor, disjoint_parts && covers);
  c.number("part 1", w1.count()).number("part 2", w2.count()).number("part 3", w3.count());
  c.number("walls", all.count());
  Check& mc = r.add("measures add up", anchor, m == s.dist(x, y));
  mc.number("sum", m).number("distance", s.dist(x, y));
  return r;
}

Report interval_product_check(const ConvexSet& c1, const ConvexSet& c2, PointId x) {
  const MedianSpace& s = c1.space();
  PointSet meet = c1.members() & c2.members();
  if (meet.count() != 1)
    throw Error(ErrorKind::IntersectionNotSingleton,
                "intersection has " + std::to_string(meet.count()) + " points", s.names(meet));
  PointId x0 = *meet.first();
  PointSet hull = hull_of_union(c1, c2);
  if (!hull.test(x)) throw Error(ErrorKind::NotInHull, "'" + s.name(x) + "' is outside the hull", {s.name(x)});

  PointSet domain = interval(s, x, x0);
  std::vector<ConvexSet> proj{c1, c2};
  std::vector<PointSet> factors{interval(s, gate_project(c1, x), x0), interval(s, gate_project(c2, x), x0)};
  ProductCheck pc = check_product_map(s, domain, proj, factors);
  Report r;
  Check& c = r.add("interval is a product", "[x, x0] = [pi_C1(x), x0] x [pi_C2(x), x0]", pc.ok());
  describe(c, s, pc);
  c.number("factor 1", factors[0].count()).number("factor 2", factors[1].count());
  return r;
}

Report hull_neighbourhood_check(const ConvexSet& c, const Rational& r) {
  if (r.sign() < 0) throw Error(ErrorKind::BadParams, "radius must be non-negative");
  const MedianSpace& s = c.space();
  PointSet nb(s.size());
  for (PointId x = 0; x < s.size(); ++x)
    if (distance(c, x) <= r) nb.set(x);
  PointSet hull = halfspace_hull(s, nb);
  Rational worst(0);
  PointId far = *c.members().first();
  hull.for_each([&](PointId x) {
    Rational d = distance(c, x);
    if (d > worst) {
      worst = d;
      far = x;
    }
  });
  Rational bound = Rational(static_cast<std::int64_t>(s.rank())) * r;
  Report rep;
  Check& ch = rep.add("hull of neighbourhood within rank * r", "Conv(N_r(C)) ⊆ N_nr(C)", worst <= bound);
  ch.number("rank", s.rank()).number("r", r).number("max distance", worst).number("bound", bound);
  ch.number("neighbourhood", nb.count()).number("hull", hull.count());
  ch.note = worst == bound ? "tight" : "not tight";
  ch.witness = {s.name(far)};
  return rep;
}

Rational incident_slack(const MedianSpace& s, PointId a) {
  Rational best(0);
  for (auto [b, w] : s.neighbours(a)) best = max(best, s.walls()[w].weight);
  return best;
}

NearHalfspace near_halfspace(const MedianSpace& s, PointId a, PointId b) {
  if (a == b) throw Error(ErrorKind::BadParams, "points must differ");
  std::optional<NearHalfspace> best;
  separating_walls(s, a, b).for_each([&](WallId w) {
    Halfspace h{w, s.signature(b).test(w)};
    NearHalfspace cand;
    cand.h = h;
    cand.to_a = distance(ConvexSet::make(s, s.members(h)), a);
    cand.depth_b = distance(ConvexSet::make(s, s.members(h.complement())), b);
    if (!best || cand.to_a < best->to_a || (cand.to_a == best->to_a && cand.depth_b > best->depth_b))
      best = std::move(cand);
  });
  NearHalfspace& r = *best;
  r.slack = incident_slack(s, a);
  r.bound = s.dist(a, b) / Rational(static_cast<std::int64_t>(s.rank())) - r.slack;
  r.certified = r.depth_b >= r.bound;
  return r;
}

DeepFamily deep_transverse_family(const MedianSpace& s, PointId a, PointId b, const Rational& eps) {
  std::size_t rank = s.rank();
  if (a == b || eps.sign() <= 0 || eps > s.dist(a, b) / Rational(static_cast<std::int64_t>(rank)))
    throw Error(ErrorKind::PrecondViolated, "eps must lie in (0, d(a,b)/rank]", {s.name(a), s.name(b), eps.str()});

  struct Candidate {
    Halfspace h;
    Rational depth_b;
    PointSet members;
  };
  std::vector<Candidate> cands;
  separating_walls(s, a, b).for_each([&](WallId w) {
    Halfspace h{w, s.signature(b).test(w)};
    Rational depth_b = distance(ConvexSet::make(s, s.members(h.complement())), b);
    if (depth_b >= eps) cands.push_back({h, depth_b, s.members(h)});
  });

  auto r = static_cast<std::int64_t>(rank);
  Rational base = s.dist(a, b) - Rational(r * (r + 1), 2) * eps;
  Rational slack = incident_slack(s, a);

  struct Scored {
    std::vector<std::size_t> idx;
    Rational min_depth;
    Rational dist_a;
  };
  auto better = [&](const Scored& x, const Scored& y) {
    if (x.min_depth != y.min_depth) return x.min_depth > y.min_depth;
    if (x.dist_a != y.dist_a) return x.dist_a > y.dist_a;
    if (x.idx.size() != y.idx.size()) return x.idx.size() < y.idx.size();
    return x.idx < y.idx;
  };

  auto search = [&](const Rational& bound) {
    std::optional<Scored> best;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, PointSet, Rational)> rec = [&](std::size_t from, PointSet inter, Rational md) {
      if (!chosen.empty()) {
        Rational da = distance(ConvexSet::make(s, inter), a);
        if (da >= bound) {
          Scored sc{chosen, md, da};
          if (!best || better(sc, *best)) best = sc;
        }
      }
      if (chosen.size() == rank) return;
      for (std::size_t i = from; i < cands.size(); ++i) {
        bool ok = true;
        for (std::size_t j : chosen) ok = ok && transverse(s, cands[i].h, cands[j].h);
        if (!ok) continue;
        chosen.push_back(i);
        rec(i + 1, inter & cands[i].members, chosen.size() == 1 ? cands[i].depth_b : min(md, cands[i].depth_b));
        chosen.pop_back();
      }
    };
    rec(0, s.all(), Rational(0));
    return best;
  };

  DeepFamily out;
  out.slack = slack;
  auto found = search(base);
  out.bound = base;
  if (!found) {
    found = search(base - slack);
    out.bound = base - slack;
    out.used_slack = true;
  }
  if (!found) throw Error(ErrorKind::NoFamilyFound, "no deep transverse family", {s.name(a), s.name(b), eps.str()});
  for (std::size_t i : found->idx) out.family.push_back(cands[i].h);
  out.min_depth = found->min_depth;
  out.distance_a = found->dist_a;
  return out;
}

Report point_separation_check(const MedianSpace& s, PointId a) {
  PointSet inter = s.all();
  for (Halfspace h : branched_at(s, a))
    if (s.contains(h, a)) inter &= s.members(h);
  Report r;
  Check& c = r.add("branched halfspaces at a cut out a", "∩{h in H_a : a in h} = {a}", inter == s.single(a));
  c.witness = s.names(inter);
  return r;
}

}  // namespace median

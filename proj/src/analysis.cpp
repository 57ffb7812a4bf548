#include "median/analysis.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace median {

bool CompactnessProfile::monotone() const {
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].n > entries[i - 1].n) return false;
  return true;
}

std::vector<Halfspace> deep_halfspaces(const MedianSpace& s, const PointSet& c, const Rational& eps) {
  std::vector<Halfspace> out;
  for (Halfspace h : all_halfspaces(s))
    if (splits(s, h, c) && depth(s, h, c) > eps) out.push_back(h);
  return out;
}

CompactnessProfile compactness_profile(const MedianSpace& s, const PointSet& c, std::span<const Rational> eps) {
  if (c.empty()) throw Error(ErrorKind::EmptySet, "profile needs a nonempty set");
  std::vector<Rational> sorted(eps.begin(), eps.end());
  for (const Rational& e : sorted)
    if (e.sign() < 0) throw Error(ErrorKind::BadParams, "eps must be non-negative", {e.str()});
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  CompactnessProfile p;
  for (const Rational& e : sorted) {
    auto family = max_disjoint_family(s, deep_halfspaces(s, c, e));
    p.entries.push_back({e, family.size(), std::move(family)});
  }
  ensure(p.monotone(), "profile is non-increasing in eps");
  return p;
}

IntervalCover interval_cover(const MedianSpace& s, const PointSet& c, PointId x0, const Rational& eps) {
  if (!c.test(x0)) throw Error(ErrorKind::PrecondViolated, "base point must lie in the set", {s.name(x0)});
  if (eps.sign() < 0) throw Error(ErrorKind::BadParams, "eps must be non-negative", {eps.str()});
  std::vector<PointId> pts = c.elements();
  std::vector<PointSet> reach;
  reach.reserve(pts.size());
  for (PointId x : pts) {
    ConvexSet iv = ConvexSet::make(s, interval(s, x0, x));
    PointSet r(s.size());
    for (PointId y : pts)
      if (distance(iv, y) <= eps) r.set(y);
    reach.push_back(std::move(r));
  }

  IntervalCover out;
  out.trace = s.single(x0);
  PointSet left = c;
  while (left.any()) {
    std::size_t best = 0;
    std::size_t gain = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t g = (reach[i] & left).count();
      if (g > gain) {
        gain = g;
        best = i;
      }
    }
    ensure(gain > 0, "every point covers itself");
    out.endpoints.push_back(pts[best]);
    out.trace |= interval(s, x0, pts[best]);
    left -= reach[best];
  }
  for (WallId w = 0; w < s.wall_count(); ++w)
    if (splits(s, {w, true}, out.trace)) ++out.trace_walls;
  return out;
}

Report interval_cover_check(const MedianSpace& s, const PointSet& c, PointId x0, const Rational& eps) {
  IntervalCover cover = interval_cover(s, c, x0, eps);
  Report r;

  std::optional<PointId> stray;
  c.for_each([&](PointId y) {
    bool near = false;
    for (PointId x : cover.endpoints) near = near || distance(s, y, metric_interval(s, x0, x)) <= eps;
    if (!near && !stray) stray = y;
  });
  Check& cov = r.add("intervals cover the set", "d(x,[x0,x_i]) <= eps", !stray);
  cov.number("k", cover.endpoints.size()).number("eps", eps);
  for (PointId x : cover.endpoints) cov.witness.push_back(s.name(x));
  if (stray) cov.note = "uncovered " + s.name(*stray);

  std::size_t m = cover.trace_walls;
  std::size_t n = max_disjoint_family(s, deep_halfspaces(s, c, eps)).size();
  Check& b = r.add("deep disjoint families bounded by trace walls", "|F| <= #walls meeting the union of [x0,x_i] (+1)",
                   n <= m + 1);
  b.number("family", n).number("trace walls", m);
  b.note = n <= m ? "within trace walls" : "exceeds trace walls by one";
  return r;
}

Report branch_approx_check(const MedianSpace& s, Halfspace h, const Rational& eps) {
  if (eps.sign() < 0) throw Error(ErrorKind::BadParams, "eps must be non-negative", {eps.str()});
  PointSet inside = s.members(h);

  std::vector<Halfspace> deep;
  for (Halfspace g : all_halfspaces(s))
    if (s.members(g).subset_of(inside) && depth(s, g, inside) > eps) deep.push_back(g);
  for (std::size_t i = 0; i < deep.size(); ++i)
    for (std::size_t j = i + 1; j < deep.size(); ++j)
      if (disjoint(s, deep[i], deep[j]))
        throw Error(ErrorKind::PrecondViolated, "two disjoint deep halfspaces inside " + label(h),
                    {label(deep[i]), label(deep[j])});

  PointSet bd = boundary(s, h);
  ConvexSet bset = ConvexSet::make(s, bd);
  PointId a = *inside.first();
  Rational da(0);
  inside.for_each([&](PointId x) {
    Rational d = distance(bset, x);
    if (d > da) {
      da = d;
      a = x;
    }
  });
  Rational slack = incident_slack(s, a);
  auto n = static_cast<std::int64_t>(s.rank());
  Rational bound = Rational(n * (n + 1) + 1) * eps + slack;

  PointSet seed = bd;
  seed.set(a);
  PointSet hull = convex_hull(s, seed).members();
  Rational hd = hausdorff_distance(s, hull, inside);

  Report r;
  Check& pick = r.add("deepest point", "d(a, boundary) >= depth - eps", da >= depth(s, h, s.all(), DepthForm::hyperplane) - eps);
  pick.witness = {s.name(a)};
  pick.number("d(a, boundary)", da);
  Check& c = r.add("hull approximates the halfspace", "d_H(Conv(a, boundary), h) <= (n(n+1)+1) eps + delta", hd <= bound);
  c.number("hausdorff", hd).number("bound", bound).number("rank", s.rank()).number("delta", slack);
  return r;
}

std::string_view to_string(Verdict v) { return v == Verdict::grid_like ? "GRID_LIKE" : "BRANCHING"; }

namespace {

struct GridParts {
  PointSet hull;
  ProductCheck product;
  std::string defect;
};

// Shared by the detector and the verifier: everything follows from the lines.
GridParts grid_from_lines(const MedianSpace& s, PointId x0, const std::vector<PointSet>& lines) {
  GridParts g{s.single(x0), {}, {}};
  std::vector<ConvexSet> proj;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!lines[i].test(x0) || !is_convex(s, lines[i])) {
      g.defect = "line " + std::to_string(i + 1) + " is not a convex set through x0";
      return g;
    }
    if (subspace_rank(s, lines[i]) > 1) {
      g.defect = "line " + std::to_string(i + 1) + " has rank above 1";
      return g;
    }
    proj.push_back(ConvexSet::make(s, lines[i]));
    g.hull |= lines[i];
  }
  g.hull = convex_hull(s, g.hull).members();
  g.product = check_product_map(s, g.hull, proj, lines);
  if (!g.product.ok())
    g.defect = "product map is not a bijective isometry";
  else if (g.hull != s.all())
    g.defect = "hull of the lines is a proper subset";
  return g;
}

}  // namespace

RigidityVerdict rigidity_detect(const MedianSpace& s, PointId x0) {
  RigidityVerdict v;
  v.x0 = x0;
  auto hs = branched_at(s, x0);
  if (auto t = facing_triple(s, hs, false)) {
    v.triple = t;
    return v;
  }
  std::vector<Halfspace> through;
  for (Halfspace h : hs)
    if (s.contains(h, x0)) through.push_back(h);
  v.family = max_transverse_family(s, through);
  std::vector<PointSet> bds;
  for (Halfspace h : v.family) bds.push_back(boundary(s, h));
  for (std::size_t i = 0; i < v.family.size(); ++i) {
    PointSet d = s.all();
    for (std::size_t j = 0; j < bds.size(); ++j)
      if (j != i) d &= bds[j];
    v.lines.push_back(std::move(d));
  }
  GridParts g = grid_from_lines(s, x0, v.lines);
  v.product = g.product;
  v.defect = g.defect;
  v.verdict = g.defect.empty() ? Verdict::grid_like : Verdict::branching;
  return v;
}

Report verify_verdict(const MedianSpace& s, const RigidityVerdict& v) {
  Report r;
  if (v.verdict == Verdict::branching && v.triple) {
    auto at = branched_at(s, v.x0);
    const auto& t = v.triple->sides;
    bool branched = true;
    for (Halfspace h : t) branched = branched && std::find(at.begin(), at.end(), h) != at.end();
    bool apart = disjoint(s, t[0], t[1]) && disjoint(s, t[0], t[2]) && disjoint(s, t[1], t[2]);
    Check& c = r.add("facing triple at x0", "three pairwise disjoint halfspaces in H_x", branched && apart);
    c.witness = {label(t[0]), label(t[1]), label(t[2])};
    return r;
  }
  GridParts g = grid_from_lines(s, v.x0, v.lines);
  if (v.verdict == Verdict::grid_like) {
    Check& c = r.add("lines span a product", "Conv(D_1 ∪ ... ∪ D_n) = D_1 x ... x D_n = X", g.defect.empty());
    c.number("lines", v.lines.size()).number("hull", g.hull.count());
    c.note = g.defect;
  } else {
    Check& c = r.add("grid construction fails", "Conv(D_1 ∪ ... ∪ D_n) = D_1 x ... x D_n = X", !g.defect.empty());
    c.note = g.defect.empty() ? "construction succeeds" : g.defect;
  }
  return r;
}

namespace {

Permutation identity(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Permutation inverse(const Permutation& a) {
  Permutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = i;
  return c;
}

std::set<Permutation> closure(std::size_t n, std::span<const Permutation> gens) {
  std::set<Permutation> seen{identity(n)};
  std::deque<Permutation> queue{identity(n)};
  while (!queue.empty()) {
    Permutation e = std::move(queue.front());
    queue.pop_front();
    for (const Permutation& g : gens) {
      Permutation next = compose(g, e);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

std::vector<Permutation> extract_generators(std::size_t n, const std::vector<Permutation>& elements) {
  std::vector<Permutation> gens;
  std::set<Permutation> reached{identity(n)};
  for (const Permutation& e : elements) {
    if (reached.contains(e)) continue;
    gens.push_back(e);
    reached = closure(n, gens);
  }
  return gens;
}

void require_isometry(const MedianSpace& s, const Permutation& g) {
  if (g.size() != s.size() || !check_isometry(s, s, g).ok())
    throw Error(ErrorKind::BadParams, "generator is not an isometry");
}

}  // namespace

IsometryGroup automorphism_group(const MedianSpace& s) {
  if (s.size() > kGroupSearchLimit)
    throw Error(ErrorKind::TooLargeForBruteForce,
                "automorphism search is limited to " + std::to_string(kGroupSearchLimit) + " points");
  IsometryGroup g;
  for_each_isometry(s, s, [&](std::span<const PointId> m) {
    g.elements.emplace_back(m.begin(), m.end());
    return true;
  });
  std::sort(g.elements.begin(), g.elements.end());
  g.generators = extract_generators(s.size(), g.elements);
  return g;
}

IsometryGroup generate_group(const MedianSpace& s, std::span<const Permutation> generators) {
  for (const Permutation& p : generators) require_isometry(s, p);
  IsometryGroup g;
  g.generators.assign(generators.begin(), generators.end());
  auto all = closure(s.size(), generators);
  g.elements.assign(all.begin(), all.end());
  return g;
}

std::vector<Permutation> stabilizer(const IsometryGroup& g, PointId x0) {
  std::vector<Permutation> out;
  for (const Permutation& e : g.elements)
    if (e[x0] == x0) out.push_back(e);
  return out;
}

Report group_check(const MedianSpace& s, const IsometryGroup& g) {
  std::set<Permutation> set(g.elements.begin(), g.elements.end());
  Report r;
  bool iso = true;
  for (const Permutation& e : g.elements) iso = iso && e.size() == s.size() && check_isometry(s, s, e).ok();
  r.add("elements are isometries", "d(gx, gy) = d(x, y)", iso).number("order", g.elements.size());

  bool inv = set.contains(identity(s.size()));
  for (const Permutation& e : g.elements) inv = inv && set.contains(inverse(e));
  r.add("closed under inverse", "g^-1 in G", inv);

  bool closed = true;
  constexpr std::size_t kPairLimit = 2000;
  const std::vector<Permutation>& left = g.elements.size() <= kPairLimit ? g.elements : g.generators;
  for (const Permutation& a : left)
    for (const Permutation& b : g.elements)
      if (closed && !set.contains(compose(a, b))) closed = false;
  Check& c = r.add("closed under composition", "gh in G", closed);
  if (&left == &g.generators) c.note = "checked against generators";
  return r;
}

Halfspace act(const MedianSpace& s, const Permutation& g, Halfspace h) {
  PointSet image(s.size());
  s.members(h).for_each([&](PointId p) { image.set(g[p]); });
  for (WallId w = 0; w < s.wall_count(); ++w) {
    const PointSet& up = s.walls()[w].upper;
    if (up == image) return {w, true};
    if ((s.all() - up) == image) return {w, false};
  }
  throw std::logic_error("invariant violated: isometries permute halfspaces");
}

PointSet orbit(std::span<const Permutation> group, PointId x) {
  ensure(!group.empty(), "group has an identity");
  PointSet out(group.front().size());
  for (const Permutation& g : group) out.set(g[x]);
  return out;
}

Report stabilizer_orbit_check(const MedianSpace& s, const IsometryGroup& g, PointId x0, PointId x) {
  auto stab = stabilizer(g, x0);
  PointSet orb = orbit(stab, x);

  std::vector<Halfspace> sep;
  for (Halfspace h : branched_at(s, x))
    if (s.contains(h, x) && !s.contains(h, x0)) sep.push_back(h);
  std::vector<Halfspace> minimal;
  for (Halfspace h : sep) {
    bool least = true;
    for (Halfspace k : sep)
      if (k != h && s.members(k).subset_of(s.members(h))) least = false;
    if (least) minimal.push_back(h);
  }
  PointSet cut = s.all();
  for (Halfspace h : minimal) cut &= s.members(h);
  ConvexSet c = ConvexSet::make(s, cut);

  std::size_t bound = 1;
  for (Halfspace h : minimal) {
    std::set<Halfspace> images;
    for (const Permutation& e : stab) images.insert(act(s, e, h));
    bound *= images.size();
  }

  Report r;
  Check& gate = r.add("x is the gate of x0", "pi_C(x0) = x", gate_project(c, x0) == x);
  for (Halfspace h : minimal) gate.witness.push_back(label(h));
  Check& o = r.add("orbit bounded by halfspace orbits", "|Stab(x0).x| <= prod |Stab(x0).h|", orb.count() <= bound);
  o.number("orbit", orb.count()).number("bound", bound).number("stabilizer", stab.size());
  o.witness = s.names(orb);
  return r;
}

Report stabilizer_wall_check(const MedianSpace& s, std::span<const Permutation> group, PointId x0) {
  std::size_t pairs = 0;
  std::optional<std::pair<Halfspace, Halfspace>> bad;
  std::string kind;
  for (const Permutation& g : group) {
    if (g.size() != s.size() || g[x0] != x0)
      throw Error(ErrorKind::PrecondViolated, "group element moves " + s.name(x0));
    for (Halfspace h : all_halfspaces(s)) {
      if (s.contains(h, x0)) continue;
      Halfspace gh = act(s, g, h);
      PairKind k = classify_pair(s, h, gh).kind;
      ++pairs;
      if (k != PairKind::equal && k != PairKind::transverse && k != PairKind::disjoint && !bad) {
        bad = std::pair{h, gh};
        kind = to_string(k);
      }
    }
  }
  Report r;
  Check& c = r.add("stabilizer never nests halfspaces", "h, gh transverse or disjoint for x0 not in h", !bad);
  c.number("elements", group.size()).number("pairs", pairs);
  if (bad) {
    c.witness = {label(bad->first), label(bad->second)};
    c.note = kind;
  }
  return r;
}

}  // namespace median

#include "median/verify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "median/analysis.hpp"
#include "median/duality.hpp"
#include "median/fixtures.hpp"

namespace median {
namespace {

using Corpus = std::vector<std::pair<std::string, MedianSpace>>;

const Corpus& corpus() {
  static const Corpus c = fixture_corpus();
  return c;
}

std::string join_names(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

// Tallies a family of sub-checks into one line.
struct Tally {
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::vector<std::string> first;

  void record(bool ok, std::vector<std::string> witness) {
    ++runs;
    if (ok) return;
    if (failures++ == 0) first = std::move(witness);
  }
  Check& emit(Report& r, std::string name, std::string anchor) const {
    Check& c = r.add(std::move(name), std::move(anchor), failures == 0);
    c.number("runs", runs).number("failures", failures);
    c.witness = first;
    return c;
  }
};

std::vector<std::string> failing_checks(const std::string& tag, const Report& r) {
  std::vector<std::string> out{tag};
  for (const Check& c : r.checks)
    if (!c.pass) out.push_back(c.name + (c.witness.empty() ? "" : " [" + join_names(c.witness) + "]"));
  return out;
}

Report median_validity(const VerifyOptions& o) {
  Report r;
  Tally fixtures;
  for (const auto& [name, s] : corpus()) fixtures.record(validate_space(s.raw()).ok, {name});
  fixtures.emit(r, "fixtures validate", "m(a,b,c) unique in [a,b] ∩ [b,c] ∩ [a,c]");

  Tally random;
  std::size_t smallest = 64, largest = 0, top_rank = 0;
  for (std::size_t i = 0; i < o.random_spaces; ++i) {
    MedianSpace s = random_median_graph(o.seed + i);
    Diagnostics d = validate_space(s.raw());
    random.record(d.ok, {"seed " + std::to_string(o.seed + i), d.message});
    smallest = std::min(smallest, s.size());
    largest = std::max(largest, s.size());
    top_rank = std::max(top_rank, s.rank());
  }
  random.emit(r, "random hulls in Q6 validate", "m(a,b,c) unique in [a,b] ∩ [b,c] ∩ [a,c]")
      .number("smallest", smallest)
      .number("largest", largest)
      .number("max rank", top_rank);

  for (auto [name, raw] : {std::pair{"C5", cycle5_raw()}, std::pair{"K4 minus an edge", k4_minus_edge_raw()}}) {
    Diagnostics d = validate_space(raw);
    bool rejected = !d.ok && d.kind == ErrorKind::NonMedian && !d.witness.empty();
    Check& c = r.add(std::string(name) + " rejected", "some triple has no unique median", rejected);
    c.witness = d.witness;
    c.note = d.message;
  }
  return r;
}

Report duality_roundtrip(const VerifyOptions& o) {
  Report r;
  Tally fixtures;
  for (const auto& [name, s] : corpus()) {
    Report rt = roundtrip_check(s);
    fixtures.record(rt.passed(), failing_checks(name, rt));
  }
  fixtures.emit(r, "fixtures roundtrip", "M(H(X)) = X");
  Tally random;
  for (std::size_t i = 0; i < o.random_spaces; ++i) {
    Report rt = roundtrip_check(random_median_graph(o.seed + i));
    random.record(rt.passed(), failing_checks("seed " + std::to_string(o.seed + i), rt));
  }
  random.emit(r, "random spaces roundtrip", "M(H(X)) = X");
  return r;
}

Report contravariance(const VerifyOptions& o) {
  Report r;
  Tally pairs;
  for (std::size_t i = 0; i < o.product_pairs; ++i) {
    std::uint64_t sa = o.seed + 5000 + 2 * i;
    MedianSpace a = random_median_graph(sa, 3);
    MedianSpace b = random_median_graph(sa + 1, 4);
    Report c = contravariance_check(pocset_of(a), pocset_of(b));
    c.merge(product_pocset_check(a, b), "product: ");
    pairs.record(c.passed(), failing_checks("seeds " + std::to_string(sa) + "," + std::to_string(sa + 1), c));
  }
  pairs.emit(r, "realize(P1 ⊔ P2) = realize(P1) x realize(P2)", "M(P1 ⊔ P2) = M(P1) x M(P2)");
  return r;
}

Report metric_measure(const VerifyOptions&) {
  Report r;
  Tally t;
  for (const auto& [name, s] : corpus())
    for (PointId x = 0; x < s.size(); ++x)
      for (PointId y = x + 1; y < s.size(); ++y)
        t.record(s.measure(separating_walls(s, x, y)) == s.dist(x, y), {name, s.name(x), s.name(y)});
  t.emit(r, "measure of separating walls is the distance", "d(x,y) = mu(W(x,y))");
  return r;
}

Report hull_bound(const VerifyOptions&) {
  Report r;
  Tally t;
  auto sweep = [&](const std::string& name, const MedianSpace& s, std::span<const Rational> radii) {
    for (PointId a = 0; a < s.size(); ++a)
      for (const Rational& rad : radii) {
        Report h = hull_neighbourhood_check(ConvexSet::make(s, s.single(a)), rad);
        t.record(h.passed(), {name, s.name(a), rad.str()});
      }
  };
  const Rational unit[] = {Rational(1), Rational(2)};
  for (const auto& [name, s] : corpus()) sweep(name, s, unit);
  for (Rational eps : {Rational(1), Rational(1, 2), Rational(1, 4)}) {
    MedianSpace s = eps_ball(2, Rational(2), eps);
    const Rational radii[] = {eps, eps * Rational(2), Rational(1)};
    sweep("eps_ball:2:2:" + eps.str(), s, radii);
  }
  t.emit(r, "hull of a ball stays in the rank-scaled ball", "Conv(B(a,r)) ⊆ B(a,nr)");

  MedianSpace g = grid(4);
  for (const char* centre : {"(0,0)", "(2,2)"}) {
    Report tight = hull_neighbourhood_check(ConvexSet::make(g, g.single(g.at(centre))), Rational(2));
    const Check& c = tight.checks.front();
    Check& out = r.add(std::string("tightness on GRID(4) at ") + centre, "Conv(B(a,r)) ⊆ B(a,nr)", c.pass && c.note == "tight");
    out.numbers = c.numbers;
    out.witness = c.witness;
  }
  return r;
}

std::vector<ConvexSet> interval_sets(const MedianSpace& s) {
  std::set<PointSet> seen;
  std::vector<ConvexSet> out;
  for (PointId x = 0; x < s.size(); ++x)
    for (PointId y = x; y < s.size(); ++y) {
      PointSet iv = interval(s, x, y);
      if (seen.insert(iv).second) out.push_back(ConvexSet::make(s, iv));
    }
  return out;
}

Report embedding(const VerifyOptions&) {
  static constexpr std::string_view kFixtures[] = {
      "substar",       "substar:1/2", "product(rooted_tree:2,path:3)", "product(star:3,path:3)",
      "rooted_tree:3", "path:8",      "grid:4",                        "hypercube:4",
  };
  constexpr std::size_t kPerFixture = 30;
  Report r;
  Tally embed;
  Tally decomp;
  std::size_t substar_pairs = 0, product_pairs = 0;
  for (std::string_view spec : kFixtures) {
    MedianSpace s = build_fixture(spec);
    auto sets = interval_sets(s);
    std::size_t found = 0;
    for (std::size_t i = 0; i < sets.size() && found < kPerFixture; ++i)
      for (std::size_t j = i + 1; j < sets.size() && found < kPerFixture; ++j) {
        const ConvexSet& c1 = sets[i];
        const ConvexSet& c2 = sets[j];
        if (c1.size() + c2.size() < 3 || c1.members().intersects(c2.members())) continue;
        if (!strongly_separated(c1, c2)) continue;
        ++found;
        std::vector<std::string> tag{std::string(spec), join_names(s.names(c1.members())), join_names(s.names(c2.members()))};
        embed.record(embed_check(c1, c2).passed(), tag);
        c1.members().for_each([&](PointId x) {
          c2.members().for_each([&](PointId y) { decomp.record(wall_decomposition_check(c1, c2, x, y).passed(), tag); });
        });
      }
    if (spec.starts_with("substar")) substar_pairs += found;
    if (spec.starts_with("product")) product_pairs += found;
  }
  Check& c = embed.emit(r, "l1 embedding of strongly separated pairs",
                        "d(x,y) = d(pi_C1 x, pi_C1 y) + d(pi_C2 x, pi_C2 y) + d(pi_[c1,c2] x, pi_[c1,c2] y)");
  c.number("substar pairs", substar_pairs).number("product pairs", product_pairs);
  r.add("at least 50 pairs with substar and product coverage", "corpus size",
        embed.runs >= 50 && substar_pairs > 0 && product_pairs > 0)
      .number("pairs", embed.runs);
  decomp.emit(r, "wall sets partition exactly", "W(x,y) = W1 ⊔ W2 ⊔ W3");
  return r;
}

Report compactness(const VerifyOptions&) {
  Report r;
  const Rational tenth(1, 10);
  const Rational hundredth(1, 100);
  for (std::size_t k : {4, 8, 16}) {
    MedianSpace g = grid(k);
    const Rational eps[] = {tenth};
    auto p = compactness_profile(g, g.all(), eps);
    Check& c = r.add("GRID(" + std::to_string(k) + ") N(1/10) = 4", "N(eps) = max #pairwise disjoint deep halfspaces",
                     p.entries[0].n == 4);
    c.number("N", p.entries[0].n);
    for (Halfspace h : p.entries[0].family) c.witness.push_back(label(h));
  }
  for (std::size_t k : {100, 200}) {
    MedianSpace st = weighted_star(k);
    const Rational eps[] = {hundredth, tenth};
    auto p = compactness_profile(st, st.all(), eps);
    std::string tag = "weighted_star(" + std::to_string(k) + ")";
    r.add(tag + " N(1/10) = 9", "N(eps) = max #pairwise disjoint deep halfspaces", p.entries[1].n == 9)
        .number("N", p.entries[1].n);
    r.add(tag + " N(1/100) = 99", "N(eps) = max #pairwise disjoint deep halfspaces", p.entries[0].n == 99)
        .number("N", p.entries[0].n);
  }
  Tally mono;
  const Rational sweep[] = {Rational(0), hundredth, tenth, Rational(1, 2), Rational(1), Rational(2)};
  for (const auto& [name, s] : corpus()) mono.record(compactness_profile(s, s.all(), sweep).monotone(), {name});
  mono.emit(r, "profiles are non-increasing", "eps <= eps' => N(eps) >= N(eps')");
  return r;
}

Report certificates(const VerifyOptions&) {
  Report r;
  Tally t;
  Rational worst_margin;
  bool first = true;
  for (Rational spacing : {Rational(1), Rational(1, 2), Rational(1, 4)}) {
    MedianSpace s = eps_ball(2, Rational(4), spacing);
    long big = std::stol((Rational(4) / spacing).numerator_str());
    long half = big / 2;
    auto pt = [&](long x, long y) { return s.at("(" + std::to_string(x) + "," + std::to_string(y) + ")"); };
    std::pair<PointId, PointId> ends[] = {{pt(-big, 0), pt(big, 0)}, {pt(0, -big), pt(0, big)}, {pt(-half, -half), pt(half, half)}};
    for (auto [a, b] : ends) {
      std::vector<std::string> tag{"spacing " + spacing.str(), s.name(a), s.name(b)};
      if (s.dist(a, b) != Rational(8)) {
        t.record(false, tag);
        continue;
      }
      Rational bound = s.dist(a, b) - Rational(3) - spacing;
      try {
        DeepFamily f = deep_transverse_family(s, a, b, Rational(1));
        PointSet inter = s.all();
        bool deep = true;
        for (Halfspace h : f.family) {
          inter &= s.members(h);
          deep = deep && s.contains(h, b) && !s.contains(h, a) &&
                 distance(ConvexSet::make(s, s.members(h.complement())), b) >= Rational(1);
        }
        Rational da = distance(ConvexSet::make(s, inter), a);
        Rational margin = da - bound;
        if (first || margin < worst_margin) worst_margin = margin;
        first = false;
        t.record(deep && da >= bound, tag);
      } catch (const Error& e) {
        tag.push_back(e.what());
        t.record(false, tag);
      }
    }
  }
  Check& c = t.emit(r, "deep transverse family far from a", "d(a, ∩h_i) >= d(a,b) - 3 eps - delta");
  c.number("worst margin", worst_margin);
  return r;
}

Report rigidity(const VerifyOptions& o) {
  Report r;
  Tally grids;
  std::vector<std::pair<std::string, MedianSpace>> gridlike;
  for (const char* spec : {"hypercube:3", "hypercube:4", "grid:2", "grid:4"}) gridlike.emplace_back(spec, build_fixture(spec));
  for (std::size_t level : o.refine) gridlike.emplace_back("eps_grid:" + std::to_string(level), eps_grid(level));
  for (const auto& [name, s] : gridlike)
    for (PointId x0 = 0; x0 < s.size(); ++x0) {
      RigidityVerdict v = rigidity_detect(s, x0);
      bool ok = v.verdict == Verdict::grid_like && verify_verdict(s, v).passed();
      grids.record(ok, {name, s.name(x0), v.defect});
    }
  grids.emit(r, "grid-like spaces split as products", "Conv(D_1 ∪ ... ∪ D_n) = D_1 x ... x D_n = X");

  Tally branching;
  for (auto [spec, centre] : {std::pair{"star:3", "c"}, std::pair{"product(star:3,path:3)", "c|v2"},
                              std::pair{"weighted_star:20", "c"}, std::pair{"rooted_tree:3", "r0"}}) {
    MedianSpace s = build_fixture(spec);
    RigidityVerdict v = rigidity_detect(s, s.at(centre));
    bool ok = v.verdict == Verdict::branching && v.triple && verify_verdict(s, v).passed();
    branching.record(ok, {spec, centre});
  }
  branching.emit(r, "branching spaces show a facing triple", "three pairwise disjoint halfspaces in H_x");
  return r;
}

std::vector<Halfspace> random_family(const MedianSpace& s, std::mt19937_64& rng, std::size_t limit) {
  auto pool = all_halfspaces(s);
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng() % i]);
  std::vector<Halfspace> out;
  for (Halfspace h : pool) {
    if (out.size() == limit) break;
    bool fits = true;
    for (Halfspace g : out) {
      PairKind k = classify_pair(s, g, h).kind;
      fits = fits && (k == PairKind::transverse || k == PairKind::disjoint || k == PairKind::complementary);
    }
    if (fits) out.push_back(h);
  }
  return out;
}

Report group_lemmas(const VerifyOptions& o) {
  Report r;
  Tally walls;
  for (const char* spec : {"hypercube:3", "star:3", "grid:2"}) {
    MedianSpace s = build_fixture(spec);
    IsometryGroup g = automorphism_group(s);
    walls.record(group_check(s, g).passed(), {spec, "group"});
    for (PointId x0 = 0; x0 < s.size(); ++x0)
      walls.record(stabilizer_wall_check(s, stabilizer(g, x0), x0).passed(), {spec, s.name(x0)});
  }
  walls.emit(r, "stabilizers never nest halfspaces", "h, gh transverse or disjoint for x0 not in h");

  MedianSpace q3 = hypercube(3);
  IsometryGroup g = automorphism_group(q3);
  PointSet orb = orbit(stabilizer(g, q3.at("000")), q3.at("011"));
  PointSet expect(q3.size(), {q3.at("011"), q3.at("101"), q3.at("110")});
  Report oc = stabilizer_orbit_check(q3, g, q3.at("000"), q3.at("011"));
  Check& c = r.add("orbit of 011 under Stab(000)", "Stab(x0).x = {011,101,110}", orb == expect && oc.passed());
  c.witness = q3.names(orb);
  c.number("|Aut|", g.elements.size());

  static constexpr std::string_view kPool[] = {"grid:4", "rooted_tree:3", "weighted_star:20", "product(star:3,path:3)",
                                               "hypercube:4", "substar", "product(rooted_tree:2,path:3)"};
  std::mt19937_64 rng(o.seed + 9000);
  Tally fam;
  std::size_t biggest = 0;
  for (std::size_t i = 0; i < o.families; ++i) {
    std::string_view spec = kPool[rng() % std::size(kPool)];
    MedianSpace s = build_fixture(spec);
    auto family = random_family(s, rng, 20);
    auto got = extract_disjoint_family(s, family);
    bool disjoint_family = true;
    for (std::size_t a = 0; a < got.size(); ++a)
      for (std::size_t b = a + 1; b < got.size(); ++b) disjoint_family = disjoint_family && disjoint(s, got[a], got[b]);
    std::size_t best = brute_force_max_disjoint(s, family);
    biggest = std::max(biggest, family.size());
    fam.record(disjoint_family && got.size() == best,
               {std::string(spec), "family " + std::to_string(i), std::to_string(got.size()) + " vs " + std::to_string(best)});
  }
  fam.emit(r, "disjoint family extraction is maximum", "|F| = max over pairwise disjoint subfamilies")
      .number("largest family", biggest);
  return r;
}

}  // namespace

std::size_t brute_force_max_disjoint(const MedianSpace& s, std::span<const Halfspace> hs) {
  std::size_t n = hs.size();
  if (n > 30) throw Error(ErrorKind::TooLargeForBruteForce, "family above 30 halfspaces");
  std::vector<std::uint32_t> clash(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (hs[i] == hs[j] || !disjoint(s, hs[i], hs[j]))) clash[i] |= std::uint32_t{1} << j;
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t banned, std::size_t size) -> void {
    if (size + (n - i) <= best) return;
    if (i == n) {
      best = size;
      return;
    }
    if (!(banned >> i & 1)) self(self, i + 1, banned | clash[i], size + 1);
    self(self, i + 1, banned, size);
  };
  rec(rec, 0, 0, 0);
  return best;
}

std::span<const Criterion> criteria() {
  static const std::vector<Criterion> all = {
      {1, "median validity", median_validity},
      {2, "duality roundtrip", duality_roundtrip},
      {3, "contravariance", contravariance},
      {4, "metric-measure", metric_measure},
      {5, "hull bound", hull_bound},
      {6, "embedding lemma", embedding},
      {7, "compactness profile", compactness},
      {8, "deep transverse certificates", certificates},
      {9, "rigidity detector", rigidity},
      {10, "group lemmas", group_lemmas},
  };
  return all;
}

Report verify_all(const VerifyOptions& opts) {
  Report r;
  r.command = "verify-all";
  for (const Criterion& c : criteria()) r.merge(c.run(opts), std::to_string(c.id) + " " + c.title + ": ");
  return r;
}

}  // namespace median

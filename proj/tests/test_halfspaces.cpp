#include <doctest.h>

#include <random>

#include "median/fixtures.hpp"
#include "median/halfspaces.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace median;
using testing::cells;
using testing::error_kind;
using testing::named;
using testing::side;

TEST_CASE("pair classification") {
  MedianSpace q3 = hypercube(3);
  CHECK(classify_pair(q3, {0, true}, {1, true}).kind == PairKind::transverse);
  CHECK(transverse(q3, {0, false}, {2, true}));

  MedianSpace p4 = path(4);
  Halfspace first = side(p4, {"v1"}), last = side(p4, {"v4"});
  CHECK(classify_pair(p4, first, last).kind == PairKind::disjoint);
  CHECK(disjoint(p4, first, last));
  PairClass nest = classify_pair(p4, side(p4, {"v3", "v4"}), side(p4, {"v2", "v3", "v4"}));
  CHECK(nest.kind == PairKind::nested);
  CHECK(nest.first_inside);
  CHECK_FALSE(classify_pair(p4, side(p4, {"v2", "v3", "v4"}), side(p4, {"v3", "v4"})).first_inside);
  CHECK(classify_pair(p4, first, first.complement()).kind == PairKind::complementary);
  CHECK(classify_pair(p4, first, first).kind == PairKind::equal);
  CHECK(classify_pair(p4, side(p4, {"v1", "v2", "v3"}), side(p4, {"v2", "v3", "v4"})).kind == PairKind::covering);
}

TEST_CASE("labels and splitting") {
  CHECK(label({3, true}) == "w3+");
  CHECK(label({0, false}) == "w0-");
  MedianSpace p4 = path(4);
  CHECK(all_halfspaces(p4).size() == 6);
  Halfspace h = side(p4, {"v3", "v4"});
  CHECK(splits(p4, h, named(p4, {"v2", "v3"})));
  CHECK_FALSE(splits(p4, h, named(p4, {"v3", "v4"})));
}

TEST_CASE("depth") {
  MedianSpace ws = weighted_star(5);
  CHECK(depth(ws, side(ws, {"v3"}), ws.all()) == Rational(1, 3));

  MedianSpace g = grid(4);
  Halfspace right = side(g, cells(g, 4, [](auto x, auto) { return x >= 1; }));
  CHECK(depth(g, right, g.all()) == Rational(4));
  CHECK(depth(g, right, g.all(), DepthForm::hyperplane) == Rational(3));
  oracle::Metric d(g.raw());
  CHECK(oracle::depth(d, oracle::to_set(g.members(right), g.size()), oracle::to_set(g.all(), g.size())) == Rational(4));
  PointSet near = cells(g, 4, [](auto x, auto) { return x <= 2; });
  CHECK(depth(g, right, near) == Rational(2));
  CHECK(error_kind([&] { depth(g, right, g.single(0)); }) == ErrorKind::EmptyIntersection);
}

TEST_CASE("boundary") {
  MedianSpace g2 = grid(2);
  Halfspace top = side(g2, cells(g2, 2, [](auto, auto y) { return y >= 1; }));
  CHECK(boundary(g2, top) == cells(g2, 2, [](auto, auto y) { return y == 1; }));
  MedianSpace q3 = hypercube(3);
  CHECK(boundary(q3, {1, true}) == q3.members({1, true}));
  MedianSpace p4 = path(4);
  CHECK(boundary(p4, side(p4, {"v3", "v4"})) == named(p4, {"v3"}));
}

TEST_CASE("subspace rank") {
  MedianSpace g = grid(4);
  CHECK(subspace_rank(g, g.all()) == 2);
  CHECK(subspace_rank(g, cells(g, 4, [](auto x, auto) { return x == 2; })) == 1);
  CHECK(subspace_rank(g, g.single(7)) == 0);
  MedianSpace q4 = hypercube(4);
  CHECK(subspace_rank(q4, q4.members({0, true})) == 3);
}

TEST_CASE("branched halfspaces") {
  MedianSpace g2 = grid(2);
  CHECK(branched_at(g2, g2.at("(1,1)")).size() == 8);
  CHECK(branched_at(g2, g2.at("(0,0)")).size() == 4);
  MedianSpace p4 = path(4);
  CHECK(branched_at(p4, p4.at("v1")).size() == 2);
  MedianSpace s3 = star(3);
  CHECK(branched_at(s3, s3.at("c")).size() == 6);
}

TEST_CASE("facing triples") {
  MedianSpace s3 = star(3);
  auto hs = all_halfspaces(s3);
  auto t = facing_triple(s3, hs);
  REQUIRE(t);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(disjoint(s3, t->sides[i], t->sides[j]));
  auto strong = facing_triple(s3, hs, true);
  REQUIRE(strong);
  REQUIRE(strong->centre);
  CHECK(s3.name(*strong->centre) == "c");

  for (MedianSpace s : {grid(4), hypercube(3)}) {
    auto all = all_halfspaces(s);
    CHECK_FALSE(facing_triple(s, all));
  }

  MedianSpace sub = substar();
  std::vector<Halfspace> tips{side(sub, {"t1"}), side(sub, {"t2"}), side(sub, {"t3"})};
  auto far = facing_triple(sub, tips, true);
  REQUIRE(far);
  REQUIRE(far->centre);
  CHECK(sub.name(*far->centre) == "c");
}

TEST_CASE("strong separation") {
  MedianSpace sub = substar();
  ConvexSet b1 = ConvexSet::make(sub, named(sub, {"i1", "t1"}));
  ConvexSet b2 = ConvexSet::make(sub, named(sub, {"i2", "t2"}));
  CHECK(strongly_separated(b1, b2));

  MedianSpace g = grid(4);
  ConvexSet left = ConvexSet::make(g, cells(g, 4, [](auto x, auto) { return x == 0; }));
  ConvexSet right = ConvexSet::make(g, cells(g, 4, [](auto x, auto) { return x == 4; }));
  CHECK_FALSE(strongly_separated(left, right));
  CHECK(strongly_separated(ConvexSet::make(g, g.single(0)), ConvexSet::make(g, g.single(24))));
  CHECK(error_kind([&] { strongly_separated(left, left); }) == ErrorKind::NotDisjoint);
}

TEST_CASE("disjoint families") {
  MedianSpace q2 = hypercube(2);
  auto four = all_halfspaces(q2);
  auto fam = extract_disjoint_family(q2, four);
  CHECK(fam.size() == 2);
  CHECK(fam[0].wall == fam[1].wall);

  MedianSpace s5 = star(5);
  std::vector<Halfspace> leaves;
  for (const char* v : {"v1", "v2", "v3"}) leaves.push_back(side(s5, {v}));
  CHECK(extract_disjoint_family(s5, leaves).size() == 3);

  MedianSpace p4 = path(4);
  std::vector<Halfspace> nested{side(p4, {"v4"}), side(p4, {"v3", "v4"})};
  CHECK(error_kind([&] { extract_disjoint_family(p4, nested); }) == ErrorKind::PrecondViolated);
  CHECK(max_disjoint_family(p4, nested).size() == 1);

  MedianSpace q3 = hypercube(3);
  auto q3all = all_halfspaces(q3);
  CHECK(max_transverse_family(q3, q3all).size() == 3);
}

TEST_CASE("wall intervals") {
  MedianSpace q3 = hypercube(3);
  WallSet w = wall_interval(q3, q3.single(q3.at("000")), q3.single(q3.at("110")));
  CHECK(w.measure == Rational(2));
  CHECK(w.walls.count() == 2);

  MedianSpace sub = substar();
  WallSet branches = wall_interval(sub, named(sub, {"i1", "t1"}), named(sub, {"i2", "t2"}));
  CHECK(branches.measure == Rational(2));
  CHECK(wall_interval(sub, named(sub, {"c", "t1"}), named(sub, {"i1"})).measure == Rational(0));
}

TEST_CASE("halfspace properties on random spaces") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    MedianSpace s = random_median_graph(seed, 4);
    oracle::Metric d(s.raw());
    auto hs = all_halfspaces(s);
    std::vector<oracle::Set> sets;
    for (Halfspace h : hs) sets.push_back(oracle::to_set(s.members(h), s.size()));

    for (std::size_t i = 0; i < hs.size(); ++i) {
      CHECK(oracle::convex(d, sets[i]));
      PointSet bd(s.size());
      for (PointId x = 0; x < s.size(); ++x)
        if (sets[i][x] && oracle::dist_to(d, x, oracle::complement(sets[i])) == s.walls()[hs[i].wall].weight) bd.set(x);
      CHECK(boundary(s, hs[i]) == bd);
      oracle::Set every(s.size(), true);
      CHECK(depth(s, hs[i], s.all()) == oracle::depth(d, sets[i], every));
      for (std::size_t j = 0; j < hs.size(); ++j) {
        CHECK(transverse(s, hs[i], hs[j]) == oracle::transverse(sets[i], sets[j]));
        CHECK(disjoint(s, hs[i], hs[j]) == !oracle::meet(sets[i], sets[j]));
      }
    }

    // Max transverse family size equals the rank oracle.
    CHECK(max_transverse_family(s, hs).size() == oracle::rank(d));

    // Disjoint family against subset enumeration on a random subfamily.
    std::vector<Halfspace> sub;
    std::vector<oracle::Set> subsets;
    for (std::size_t i = 0; i < hs.size(); ++i)
      if (rng() % 2) {
        sub.push_back(hs[i]);
        subsets.push_back(sets[i]);
      }
    if (sub.size() <= 16) CHECK(max_disjoint_family(s, sub).size() == oracle::max_disjoint(subsets));

    PointId a = rng() % s.size(), b = rng() % s.size();
    WallSet w = wall_interval(s, s.single(a), s.single(b));
    CHECK(w.measure == d(a, b));
  }
}

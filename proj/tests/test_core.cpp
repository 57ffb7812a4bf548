#include <doctest.h>

#include <random>

#include "median/core.hpp"
#include "median/fixtures.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace median;
using testing::named;

namespace {

PointSet random_subset(const MedianSpace& s, std::mt19937_64& rng, std::size_t max_points) {
  PointSet p(s.size());
  std::size_t k = 1 + rng() % max_points;
  for (std::size_t i = 0; i < k; ++i) p.set(rng() % s.size());
  return p;
}

}  // namespace

TEST_CASE("intervals") {
  MedianSpace p4 = path(4);
  CHECK(interval(p4, p4.at("v1"), p4.at("v4")) == p4.all());
  CHECK(interval(p4, 2, 2) == p4.single(2));
  MedianSpace g2 = grid(2);
  CHECK(interval(g2, g2.at("(0,0)"), g2.at("(2,2)")).count() == 9);
  CHECK(join(g2, g2.single(g2.at("(0,0)")), g2.single(g2.at("(2,2)"))) == g2.all());
  CHECK(hausdorff_distance(p4, p4.single(0), p4.single(3)) == Rational(3));
}

TEST_CASE("hulls") {
  MedianSpace g = grid(4);
  PointSet ball = neighbourhood(g, g.single(g.at("(2,2)")), Rational(2));
  CHECK(ball.count() == 13);
  HullResult it = iterated_join_hull(g, ball);
  CHECK(it.members == g.all());
  CHECK(it.iterations <= g.rank());
  oracle::Metric d(g.raw());
  CHECK(oracle::hull(d, oracle::to_set(ball, g.size())) == oracle::to_set(g.all(), g.size()));

  MedianSpace sub = substar();
  PointSet h = convex_hull(sub, named(sub, {"t1", "t2"})).members();
  CHECK(h == named(sub, {"t1", "i1", "c", "i2", "t2"}));
  CHECK(convex_hull(sub, sub.single(3)).members() == sub.single(3));
}

TEST_CASE("convexity") {
  MedianSpace g2 = grid(2);
  CHECK_FALSE(is_convex(g2, named(g2, {"(1,0)", "(0,1)", "(2,1)", "(1,2)", "(1,1)"})));
  MedianSpace q3 = hypercube(3);
  CHECK(is_convex(q3, named(q3, {"000", "001", "010", "011"})));
  MedianSpace p4 = path(4);
  CHECK_FALSE(is_convex(p4, named(p4, {"v1", "v3"})));
  CHECK_THROWS_AS(ConvexSet::make(p4, named(p4, {"v1", "v3"})), Error);
  CHECK_THROWS_AS(ConvexSet::make(p4, p4.empty_set()), Error);
}

TEST_CASE("gates") {
  MedianSpace g = grid(4);
  ConvexSet sq = convex_hull(g, named(g, {"(0,0)", "(2,2)"}));
  CHECK(g.name(gate_project(sq, g.at("(3,1)"))) == "(2,1)");
  CHECK(gate_project(sq, g.at("(1,1)")) == g.at("(1,1)"));
  MedianSpace sub = substar();
  ConvexSet branch = ConvexSet::make(sub, named(sub, {"i1", "t1"}));
  CHECK(sub.name(gate_project(branch, sub.at("t2"))) == "i1");
}

TEST_CASE("helly") {
  MedianSpace g2 = grid(2);
  std::vector<ConvexSet> rects{convex_hull(g2, named(g2, {"(0,0)", "(1,2)"})), convex_hull(g2, named(g2, {"(1,0)", "(2,1)"})),
                               convex_hull(g2, named(g2, {"(0,1)", "(2,2)"}))};
  CHECK(helly_intersection(g2, rects).any());
  MedianSpace q3 = hypercube(3);
  std::vector<ConvexSet> faces{ConvexSet::make(q3, named(q3, {"000", "001", "010", "011"})),
                               ConvexSet::make(q3, named(q3, {"000", "001", "100", "101"})),
                               ConvexSet::make(q3, named(q3, {"000", "010", "100", "110"}))};
  CHECK(helly_intersection(q3, faces) == q3.single(q3.at("000")));
  CHECK(helly_intersection(q3, std::span(faces).first(1)) == faces[0].members());
  CHECK_THROWS_AS(helly_intersection(q3, std::span<const ConvexSet>()), Error);
}

TEST_CASE("properties on random spaces") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    MedianSpace s = random_median_graph(seed, 5);
    oracle::Metric d(s.raw());
    for (PointId a = 0; a < s.size(); ++a)
      for (PointId b = 0; b < s.size(); ++b) {
        PointSet iv = interval(s, a, b);
        CHECK(iv == metric_interval(s, a, b));
        CHECK(oracle::to_set(iv, s.size()) == oracle::interval(d, a, b));
        CHECK(s.measure(separating_walls(s, a, b)) == s.dist(a, b));
      }
    for (int trial = 0; trial < 6; ++trial) {
      PointSet a = random_subset(s, rng, 4);
      HullResult it = iterated_join_hull(s, a);
      CHECK(it.iterations <= s.rank());
      CHECK(it.members == halfspace_hull(s, a));
      CHECK(oracle::to_set(it.members, s.size()) == oracle::hull(d, oracle::to_set(a, s.size())));
      CHECK(is_convex(s, a) == oracle::convex(d, oracle::to_set(a, s.size())));

      ConvexSet c = ConvexSet::make(s, it.members);
      for (PointId x = 0; x < s.size(); ++x) {
        PointId g = gate_project(c, x);
        CHECK(oracle::nearest(d, oracle::to_set(c.members(), s.size()), x) == std::vector<std::size_t>{g});
        CHECK(distance(c, x) == s.dist(x, g));
        CHECK(distance(s, x, c.members()) == s.dist(x, g));
        c.members().for_each([&](PointId y) { CHECK(interval(s, y, x).test(g)); });
      }
      PointSet b = halfspace_hull(s, random_subset(s, rng, 3));
      PointSet cset = halfspace_hull(s, random_subset(s, rng, 3));
      std::vector<ConvexSet> three{c, ConvexSet::make(s, b), ConvexSet::make(s, cset)};
      PointSet meet = helly_intersection(s, three);
      bool pairwise = c.members().intersects(b) && c.members().intersects(cset) && b.intersects(cset);
      if (pairwise) CHECK(meet.any());
    }
  }
}

#include <doctest.h>

#include <numeric>
#include <random>

#include "median/duality.hpp"
#include "median/fixtures.hpp"
#include "median/isometry.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace median;
using testing::error_kind;

namespace {

/// Consistent side choices: one side per wall, pairwise intersecting.
std::size_t consistent_choices(const MedianSpace& s) {
  std::size_t m = s.wall_count(), count = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    bool ok = true;
    for (WallId i = 0; i < m && ok; ++i)
      for (WallId j = i + 1; j < m && ok; ++j)
        ok = s.members({i, (mask >> i & 1) != 0}).intersects(s.members({j, (mask >> j & 1) != 0}));
    count += ok;
  }
  return count;
}

MeasuredPocSet one_wall(const char* a, const char* b, Rational w = Rational(1)) {
  return MeasuredPocSet::make({{a, b, w}}, {});
}

}  // namespace

TEST_CASE("ultrafilters of halfspace poc sets") {
  for (auto [spec, expect] : std::vector<std::pair<const char*, std::size_t>>{
           {"path:2", 2}, {"hypercube:3", 8}, {"path:4", 4}, {"star:3", 4}, {"grid:2", 9}, {"substar", 7}}) {
    MedianSpace s = build_fixture(spec);
    MeasuredPocSet p = pocset_of(s);
    CHECK(p.pair_count() == s.wall_count());
    auto us = ultrafilters(p);
    CHECK(us.size() == expect);
    CHECK(consistent_choices(s) == expect);
    CHECK(std::is_sorted(us.begin(), us.end()));
    for (PointId x = 0; x < s.size(); ++x) {
      Ultrafilter u = principal_ultrafilter(s, x);
      CHECK(p.is_ultrafilter(u));
      CHECK(std::find(us.begin(), us.end(), u) != us.end());
    }
    REQUIRE(p.basepoint());
    CHECK(*p.basepoint() == principal_ultrafilter(s, 0));
  }
}

TEST_CASE("poc set orders") {
  MedianSpace p4 = path(4);
  MeasuredPocSet p = pocset_of(p4);
  CHECK(p.hasse().size() == 4);
  for (std::size_t e = 2; e < p.element_count(); ++e) {
    CHECK(p.leq(MeasuredPocSet::zero, e));
    CHECK(p.leq(e, MeasuredPocSet::zero_star));
    CHECK_FALSE(p.leq(e, MeasuredPocSet::star(e)));
    for (std::size_t f = 2; f < p.element_count(); ++f)
      CHECK(p.leq(e, f) == p.leq(MeasuredPocSet::star(f), MeasuredPocSet::star(e)));
  }
  CHECK(p.name(MeasuredPocSet::zero) == "0");
  CHECK(p.find(p.name(2)) == std::size_t{2});

  using Less = std::vector<std::pair<std::size_t, std::size_t>>;
  Less self_star{{2, 3}};
  CHECK(error_kind([&] { MeasuredPocSet::make({{"a", "a*", Rational(1)}}, self_star); }) == ErrorKind::BadParams);
  Less cycle{{2, 4}, {4, 2}};
  CHECK(error_kind([&] {
          MeasuredPocSet::make({{"a", "a*", Rational(1)}, {"b", "b*", Rational(1)}}, cycle);
        }) == ErrorKind::BadParams);
  CHECK(error_kind([&] { one_wall("a", "a*", Rational(0)); }) == ErrorKind::BadParams);
  CHECK(error_kind([&] { one_wall("a", "a"); }) == ErrorKind::BadParams);

  MeasuredPocSet q = one_wall("a", "a*");
  CHECK(error_kind([&] { q.set_basepoint(Ultrafilter{{true, false}}); }) == ErrorKind::BadParams);
}

TEST_CASE("realization") {
  Realization two = realize(one_wall("a", "a*", Rational(3, 2)));
  CHECK(two.space.size() == 2);
  CHECK(two.space.dist(0, 1) == Rational(3, 2));

  MeasuredPocSet sq = disjoint_union(one_wall("a", "a*"), one_wall("b", "b*"));
  CHECK(sq.pair_count() == 2);
  CHECK(sq.hasse().empty());
  CHECK(find_isometry(realize(sq).space, hypercube(2)));

  MeasuredPocSet p3 = pocset_of(path(3));
  Realization g = realize(disjoint_union(p3, p3));
  CHECK(g.space.size() == 9);
  CHECK(find_isometry(g.space, grid(2)));
  CHECK_FALSE(find_isometry(g.space, build_fixture("product(star:3,path:2)")));
}

TEST_CASE("roundtrip through the dual") {
  for (const char* spec : {"hypercube:3", "weighted_star:5", "grid:3", "substar:1/2", "rooted_tree:2"}) {
    MedianSpace s = build_fixture(spec);
    Report r = roundtrip_check(s);
    CHECK_MESSAGE(r.passed(), spec);
    Realization back = realize(pocset_of(s));
    CHECK(find_isometry(back.space, s));
  }
}

TEST_CASE("contravariance and products") {
  MeasuredPocSet a = pocset_of(star(3));
  MeasuredPocSet b = pocset_of(weighted_star(3));
  CHECK(contravariance_check(a, b).passed());
  CHECK(product_pocset_check(path(3), substar()).passed());

  ProductSpace ps = l1_product(path(2), path(3));
  CHECK(ps.space.size() == 6);
  CHECK(ps.space.name(0) == "v1|v1");
  for (PointId x = 0; x < 6; ++x)
    for (PointId y = 0; y < 6; ++y) {
      auto [x1, x2] = ps.coords[x];
      auto [y1, y2] = ps.coords[y];
      CHECK(ps.space.dist(x, y) == path(2).dist(x1, y1) + path(3).dist(x2, y2));
    }
}

TEST_CASE("relabelling preserves the structure") {
  std::mt19937_64 rng(3);
  for (const char* spec : {"grid:2", "substar", "hypercube:3", "rooted_tree:2"}) {
    MeasuredPocSet p = pocset_of(build_fixture(spec));
    std::size_t m = p.pair_count();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> flip(m);
    for (std::size_t i = 0; i < m; ++i) flip[i] = rng() % 2;
    MeasuredPocSet q = relabel(p, order, flip);

    std::vector<std::size_t> map(p.element_count());
    map[0] = 0;
    map[1] = 1;
    for (std::size_t i = 0; i < m; ++i)
      for (bool second : {false, true})
        map[MeasuredPocSet::element(order[i], second)] = MeasuredPocSet::element(i, second != flip[i]);
    CHECK(is_isomorphism(p, q, map));
    std::swap(map[2], map[4]);
    CHECK_FALSE(is_isomorphism(p, q, map));
    CHECK(ultrafilters(q).size() == ultrafilters(p).size());
  }
}

TEST_CASE("dual counts on random spaces") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MedianSpace s = random_median_graph(seed, 4);
    if (s.wall_count() > 14) continue;
    CHECK(ultrafilters(pocset_of(s)).size() == consistent_choices(s));
    CHECK(roundtrip_check(s).passed());
  }
}

#include "median/fixtures.hpp"

#include <charconv>
#include <map>
#include <random>

#include "median/core.hpp"
#include "median/duality.hpp"

namespace median {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::BadParams, what); }

class GraphBuilder {
 public:
  PointId add(std::string name) {
    raw_.points.push_back(std::move(name));
    return raw_.points.size() - 1;
  }
  void edge(PointId u, PointId v, const Rational& w) { raw_.edges.push_back({u, v, w}); }
  MedianSpace build() && { return MedianSpace::build(std::move(raw_)); }

 private:
  RawSpace raw_;
};

std::string coords(std::span<const long> z) {
  std::string out = "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(z[i]);
  }
  return out + ")";
}

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) bad("expected a count, got '" + std::string(text) + "'");
  return v;
}

Rational parse_rational(std::string_view text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

std::vector<std::string_view> split_args(std::string_view spec) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i)
    if (i == spec.size() || spec[i] == ':') {
      out.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

}  // namespace

MedianSpace hypercube(std::size_t n) {
  if (n > 10) bad("hypercube dimension above 10");
  GraphBuilder g;
  std::size_t count = std::size_t{1} << n;
  for (std::size_t v = 0; v < count; ++v) {
    std::string name(n, '0');
    for (std::size_t b = 0; b < n; ++b)
      if (v >> (n - 1 - b) & 1) name[b] = '1';
    g.add(name.empty() ? "-" : name);
  }
  for (std::size_t v = 0; v < count; ++v)
    for (std::size_t b = 0; b < n; ++b)
      if (!(v >> b & 1)) g.edge(v, v | (std::size_t{1} << b), Rational(1));
  return std::move(g).build();
}

MedianSpace grid(std::size_t k, std::size_t m, const Rational& spacing) {
  if (spacing.sign() <= 0) bad("grid spacing must be positive");
  if ((k + 1) * (m + 1) > 4096) bad("grid too large");
  GraphBuilder g;
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      long z[2] = {static_cast<long>(i), static_cast<long>(j)};
      g.add(coords(z));
    }
  auto at = [&](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      if (i < k) g.edge(at(i, j), at(i + 1, j), spacing);
      if (j < m) g.edge(at(i, j), at(i, j + 1), spacing);
    }
  return std::move(g).build();
}

MedianSpace eps_grid(std::size_t level) {
  if (level == 0) bad("refinement level must be positive");
  return grid(level, level, Rational(1, static_cast<std::int64_t>(level)));
}

MedianSpace path(std::size_t k) {
  if (k == 0) bad("path needs a point");
  GraphBuilder g;
  for (std::size_t i = 1; i <= k; ++i) g.add("v" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < k; ++i) g.edge(i, i + 1, Rational(1));
  return std::move(g).build();
}

MedianSpace star(std::size_t b) {
  GraphBuilder g;
  g.add("c");
  for (std::size_t i = 1; i <= b; ++i) g.edge(0, g.add("v" + std::to_string(i)), Rational(1));
  return std::move(g).build();
}

MedianSpace weighted_star(std::size_t k) {
  GraphBuilder g;
  g.add("c");
  for (std::size_t i = 1; i <= k; ++i)
    g.edge(0, g.add("v" + std::to_string(i)), Rational(1, static_cast<std::int64_t>(i)));
  return std::move(g).build();
}

MedianSpace substar(const Rational& w) {
  if (w.sign() <= 0) bad("branch weight must be positive");
  GraphBuilder g;
  g.add("c");
  for (int k = 1; k <= 3; ++k) {
    PointId inner = g.add("i" + std::to_string(k));
    PointId tip = g.add("t" + std::to_string(k));
    g.edge(0, inner, w);
    g.edge(inner, tip, w);
  }
  return std::move(g).build();
}

MedianSpace rooted_tree(std::size_t depth) {
  if (depth > 8) bad("tree depth above 8");
  GraphBuilder g;
  std::vector<std::pair<PointId, std::string>> level{{g.add("r"), "r"}};
  for (std::size_t l = 1; l <= depth; ++l) {
    std::vector<std::pair<PointId, std::string>> next;
    for (const auto& [parent, name] : level)
      for (char c : {'0', '1'}) {
        std::string child = name + c;
        PointId id = g.add(child);
        g.edge(parent, id, Rational(1, static_cast<std::int64_t>(l)));
        next.emplace_back(id, child);
      }
    level = std::move(next);
  }
  return std::move(g).build();
}

MedianSpace eps_ball(std::size_t n, const Rational& r, const Rational& eps) {
  if (n == 0 || n > 4) bad("ball dimension must be 1..4");
  if (r.sign() <= 0 || eps.sign() <= 0) bad("radius and spacing must be positive");
  Rational steps = r / eps;
  if (!steps.is_integer()) bad("radius must be a multiple of the spacing");
  long big = std::stol(steps.numerator_str());
  if (big > 64) bad("ball too fine");

  GraphBuilder g;
  std::map<std::vector<long>, PointId> index;
  std::vector<long> z(n, -big);
  for (;;) {
    long norm = 0;
    for (long c : z) norm += c < 0 ? -c : c;
    if (norm <= big) index.emplace(z, g.add(coords(z)));
    std::size_t i = n;
    while (i > 0 && z[i - 1] == big) z[--i] = -big;
    if (i == 0) break;
    ++z[i - 1];
  }
  for (const auto& [p, id] : index)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> q = p;
      ++q[i];
      if (auto it = index.find(q); it != index.end()) g.edge(id, it->second, eps);
    }
  return std::move(g).build();
}

MedianSpace product(const MedianSpace& a, const MedianSpace& b) { return l1_product(a, b).space; }

RawSpace cycle5_raw() {
  RawSpace raw;
  raw.points = {"a", "b", "c", "d", "e"};
  for (PointId i = 0; i < 5; ++i) raw.edges.push_back({i, (i + 1) % 5, Rational(1)});
  return raw;
}

RawSpace k4_minus_edge_raw() {
  RawSpace raw;
  raw.points = {"a", "b", "c", "d"};
  raw.edges = {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {1, 2, Rational(1)},
               {1, 3, Rational(1)}, {2, 3, Rational(1)}};
  return raw;
}

MedianSpace build_fixture(std::string_view spec) {
  if (spec.starts_with("product(") && spec.ends_with(")")) {
    std::string_view inner = spec.substr(8, spec.size() - 9);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) return product(build_fixture(inner.substr(0, i)), build_fixture(inner.substr(i + 1)));
    }
    bad("product needs two factors: '" + std::string(spec) + "'");
  }
  auto args = split_args(spec);
  std::string_view name = args[0];
  std::size_t extra = args.size() - 1;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (extra < lo || extra > hi) bad("wrong number of parameters in '" + std::string(spec) + "'");
  };
  if (name == "hypercube") return need(1, 1), hypercube(parse_count(args[1]));
  if (name == "grid") {
    need(1, 3);
    std::size_t k = parse_count(args[1]);
    std::size_t m = extra >= 2 ? parse_count(args[2]) : k;
    return grid(k, m, extra == 3 ? parse_rational(args[3]) : Rational(1));
  }
  if (name == "eps_grid") return need(1, 1), eps_grid(parse_count(args[1]));
  if (name == "path") return need(1, 1), path(parse_count(args[1]));
  if (name == "star") return need(1, 1), star(parse_count(args[1]));
  if (name == "weighted_star") return need(1, 1), weighted_star(parse_count(args[1]));
  if (name == "substar") return need(0, 1), substar(extra ? parse_rational(args[1]) : Rational(1));
  if (name == "rooted_tree") return need(1, 1), rooted_tree(parse_count(args[1]));
  if (name == "eps_ball") {
    need(3, 3);
    return eps_ball(parse_count(args[1]), parse_rational(args[2]), parse_rational(args[3]));
  }
  bad("unknown fixture '" + std::string(spec) + "'");
}

std::vector<std::pair<std::string, MedianSpace>> fixture_corpus() {
  static constexpr std::string_view kSpecs[] = {
      "hypercube:3",  "hypercube:4",     "grid:2",          "grid:4",         "grid:2:3",
      "path:4",       "path:8",          "star:3",          "weighted_star:5", "weighted_star:20",
      "substar",      "substar:1/2",     "rooted_tree:3",   "eps_ball:2:1:1/2", "eps_grid:4",
      "product(star:3,path:3)", "product(rooted_tree:2,path:3)", "product(substar,path:2)",
  };
  std::vector<std::pair<std::string, MedianSpace>> out;
  for (std::string_view s : kSpecs) out.emplace_back(std::string(s), build_fixture(s));
  return out;
}

namespace {

MedianSpace from_masks(const std::vector<std::uint32_t>& pts, const std::vector<Rational>& weights, std::size_t bits) {
  RawSpace raw;
  for (std::uint32_t m : pts) {
    std::string name(bits, '0');
    for (std::size_t b = 0; b < bits; ++b)
      if (m >> b & 1) name[b] = '1';
    raw.points.push_back(name.empty() ? "-" : name);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::uint32_t diff = pts[i] ^ pts[j];
      if (diff && !(diff & (diff - 1))) raw.edges.push_back({i, j, weights[std::countr_zero(diff)]});
    }
  return MedianSpace::build(std::move(raw));
}

}  // namespace

MedianSpace random_median_graph(std::uint64_t seed, std::size_t steps) {
  if (steps > 10) bad("at most 10 expansion steps");
  static const Rational kWeights[] = {Rational(1), Rational(1, 2), Rational(2), Rational(1, 3)};
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> pts{0};
  std::vector<Rational> weights;
  for (std::size_t step = 0; step < steps; ++step) {
    MedianSpace cur = from_masks(pts, weights, step);
    std::size_t picks = 1 + rng() % 3;
    PointSet seedset(cur.size());
    for (std::size_t i = 0; i < picks; ++i) seedset.set(rng() % cur.size());
    PointSet hull = halfspace_hull(cur, seedset);
    hull.for_each([&](PointId p) { pts.push_back(pts[p] | (std::uint32_t{1} << step)); });
    weights.push_back(kWeights[rng() % 4]);
  }
  return from_masks(pts, weights, steps);
}

}  // namespace median

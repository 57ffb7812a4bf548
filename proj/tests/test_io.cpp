#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "median/fixtures.hpp"
#include "median/io.hpp"
#include "median/isometry.hpp"
#include "helpers.hpp"

using namespace median;
using testing::error_kind;

namespace {

/// Line and column of the ParseError thrown by f, or {0,0}.
template <class F>
std::pair<std::size_t, std::size_t> parse_error_at(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("space files round-trip byte for byte") {
  for (const auto& [spec, s] : fixture_corpus()) {
    std::string text = write_space(s);
    RawSpace back = parse_space(text);
    CHECK_MESSAGE(write_space(back) == text, spec);
    CHECK(back == canonical(s.raw()));
    CHECK(find_isometry(MedianSpace::build(back), s));
  }
  CHECK(write_space(hypercube(3)) == write_space(parse_space(write_space(hypercube(3)))));
}

TEST_CASE("canonical form") {
  const char* text = R"({"version": 1, "kind": "graph", "points": ["b", "a"],
    "edges": [{"u": "a", "v": "b", "weight": "2/4"}]})";
  RawSpace raw = parse_space(text);
  REQUIRE(raw.edges.size() == 1);
  CHECK(raw.edges[0].u == 0);
  CHECK(raw.edges[0].v == 1);
  CHECK(raw.edges[0].weight == Rational(1, 2));
  std::string out = write_space(raw);
  CHECK(out.find("\"1/2\"") != std::string::npos);
  CHECK(out.find("2/4") == std::string::npos);
  CHECK(out.back() == '\n');
}

TEST_CASE("table form files") {
  MedianSpace q2 = hypercube(2);
  RawSpace raw;
  raw.form = Form::table;
  raw.points = {"00", "01", "10", "11"};
  for (PointId a = 0; a < 4; ++a)
    for (PointId b = a + 1; b < 4; ++b)
      for (PointId c = b + 1; c < 4; ++c) raw.rows.push_back({c, b, a, q2.median(a, b, c)});
  std::string text = write_space(raw);
  CHECK(text.find("\"table\"") != std::string::npos);
  RawSpace back = parse_space(text);
  CHECK(write_space(back) == text);
  CHECK(MedianSpace::build(back).wall_count() == 2);
}

TEST_CASE("malformed space files report positions") {
  CHECK(parse_error_at([] { parse_space("{\n  \"version\": 1,\n  \"kind\": \"graph\",\n  oops\n}"); }) ==
        std::pair<std::size_t, std::size_t>{4, 3});
  CHECK(parse_error_at([] { parse_space("{\"version\": 2, \"kind\": \"graph\", \"points\": [], \"edges\": []}"); }).first ==
        1);

  const char* unknown = "{\n\"version\": 1,\n\"kind\": \"graph\",\n\"points\": [\"a\"],\n\"edges\": [{\"u\": \"a\", \"v\": \"z\", \"weight\": \"1\"}]\n}";
  auto at = parse_error_at([&] { parse_space(unknown); });
  CHECK(at.first == 5);
  CHECK(at.second > 1);

  const char* bad_weight = "{\"version\": 1, \"kind\": \"graph\", \"points\": [\"a\", \"b\"],\n"
                           "\"edges\": [{\"u\": \"a\", \"v\": \"b\", \"weight\": \"1/0\"}]}";
  CHECK(parse_error_at([&] { parse_space(bad_weight); }).first == 2);
  CHECK(error_kind([] { parse_space("[]"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_space("{\"version\": 1, \"kind\": \"graph\", \"points\": [\"a\", \"a\"], \"edges\": []}"); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind([] { parse_space("{\"version\": 1, \"kind\": \"cloud\", \"points\": [], \"edges\": []}"); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("poc set files") {
  for (const char* spec : {"path:3", "hypercube:3", "substar:1/2", "weighted_star:5"}) {
    MeasuredPocSet p = pocset_of(build_fixture(spec));
    std::string text = write_pocset(p);
    MeasuredPocSet back = parse_pocset(text);
    CHECK(write_pocset(back) == text);
    CHECK(back.basepoint() == p.basepoint());
    std::vector<std::size_t> same(p.element_count());
    for (std::size_t e = 0; e < same.size(); ++e) same[e] = e;
    CHECK(is_isomorphism(p, back, same));
  }

  // a < b < a* puts a below its own complement.
  const char* bad_order = R"({
  "elements": ["a", "a*", "b", "b*"],
  "order": [
    ["a", "b"],
    ["b", "a*"]
  ],
  "pairs": [["a", "a*"], ["b", "b*"]],
  "version": 1,
  "weights": ["1", "1"]
})";
  auto at = parse_error_at([&] { parse_pocset(bad_order); });
  CHECK(at.first == 3);
  CHECK(at.second == 3);

  const char* stray = R"({"elements": ["a", "a*"], "order": [["a", "q"]], "pairs": [["a", "a*"]], "version": 1, "weights": ["1"]})";
  CHECK(error_kind([&] { parse_pocset(stray); }) == ErrorKind::ParseError);
  const char* mismatch = R"({"elements": ["a", "b"], "order": [], "pairs": [["a", "a*"]], "version": 1, "weights": ["1"]})";
  CHECK(error_kind([&] { parse_pocset(mismatch); }) == ErrorKind::ParseError);
  const char* base = R"({"basepoint": ["a", "b*"], "elements": ["a", "a*", "b", "b*"], "order": [["a", "b"]],
    "pairs": [["a", "a*"], ["b", "b*"]], "version": 1, "weights": ["1", "1"]})";
  CHECK(error_kind([&] { parse_pocset(base); }) == ErrorKind::ParseError);
}

TEST_CASE("report files") {
  Report r;
  r.command = "hull";
  r.inputs_digest = sha256_hex("abc");
  r.add("first", "a = b", true).number("n", std::size_t{3}).number("eps", Rational(1, 10));
  Check& c = r.add("second", "c <= d", false);
  c.witness = {"x", "y"};
  c.note = "off by one";
  std::string text = to_json(r);
  Report back = parse_report(text);
  CHECK(to_json(back) == text);
  CHECK(back.exit_status() == 1);
  CHECK(back.checks[1].witness == std::vector<std::string>{"x", "y"});
  CHECK(text.find("\"exit_status\": 1") != std::string::npos);
  CHECK(text.find("\"paper_anchor\"") != std::string::npos);

  std::string lying = text;
  lying.replace(lying.find("\"exit_status\": 1"), 16, "\"exit_status\": 0");
  CHECK(error_kind([&] { parse_report(lying); }) == ErrorKind::ParseError);

  std::string plain = to_text(r);
  CHECK(plain.find("PASS first") != std::string::npos);
  CHECK(plain.find("FAIL second") != std::string::npos);
}

TEST_CASE("digests and files") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

  auto dir = std::filesystem::temp_directory_path() / "median_io_test";
  std::filesystem::create_directories(dir);
  auto file = dir / "q2.json";
  std::ofstream(file) << write_space(hypercube(2));
  CHECK(parse_space(read_text(file)) == canonical(hypercube(2).raw()));
  std::filesystem::remove_all(dir);
  CHECK(error_kind([&] { read_text(dir / "missing.json"); }) == ErrorKind::BadParams);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "median/fixtures.hpp"
#include "median/io.hpp"
#include "../tools/cli.hpp"

using namespace median;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "median_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("basic subcommands") {
  Run r = run({"rank", "--fixture", "hypercube:4"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");

  Run rt = run({"roundtrip", "--fixture", "substar"});
  CHECK(rt.code == 0);
  CHECK(has(rt.out, "ok:"));

  Run p = run({"profile", "--fixture", "weighted_star:20", "--eps", "1/10"});
  CHECK(p.code == 0);
  CHECK(has(p.out, "eps=1/10 N=9"));

  Run h = run({"hull", "--fixture", "path:4", "--set", "v1", "v3"});
  CHECK(h.out == "v1\nv2\nv3\n");
  CHECK(run({"project", "--fixture", "grid:2", "--set", "(0,0)", "(1,1)", "--point", "(2,2)"}).out == "(1,1)\n");

  Run w = run({"walls", "--fixture", "path:3"});
  CHECK(has(w.out, "w1 weight=1 upper=v3"));

  Run v = run({"rigidity", "--fixture", "grid:2", "--point", "(1,1)"});
  CHECK(v.code == 0);
  CHECK(has(v.out, "GRID_LIKE"));
  CHECK(has(run({"rigidity", "--fixture", "star:3", "--point", "c"}).out, "BRANCHING"));

  Run g = run({"group", "--fixture", "hypercube:3", "--point", "000", "--orbit", "011"});
  CHECK(g.code == 0);

  Run c = run({"cover", "--fixture", "star:3", "--base", "c", "--eps", "0"});
  CHECK(c.code == 0);
}

TEST_CASE("two-set subcommands") {
  Run e = run({"embed-check", "--fixture", "substar", "--first", "i1", "t1", "--second", "i2", "t2"});
  CHECK(e.code == 0);
  Run d = run({"decompose", "--fixture", "substar", "--first", "i1", "t1", "--second", "i2", "t2", "--x", "t1", "--y",
               "t2"});
  CHECK(d.code == 0);
  Run bad = run({"embed-check", "--fixture", "grid:2", "--first", "(0,0)", "(0,2)", "--second", "(2,0)", "(2,2)"});
  CHECK(bad.code == 2);
  CHECK(has(bad.err, "NotStronglySeparated"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"rank"}).code == 2);
  CHECK(run({"rank", "--fixture", "nonsense:3"}).code == 2);
  CHECK(run({"rank", "--fixture", "path:3", "--format", "xml"}).code == 2);
  CHECK(run({"hull", "--fixture", "path:3", "--set", "v9"}).code == 2);
  CHECK(run({"rank", "/no/such/file.json"}).code == 2);

  TempDir tmp;
  RawSpace c5 = cycle5_raw();
  std::string file = tmp.write("c5.json", write_space(c5));
  Run v = run({"validate", file});
  CHECK(v.code == 1);
  CHECK(has(v.out, "FAIL median space"));
  CHECK(has(v.out, "NonMedian"));
  Run broken = run({"validate", tmp.write("broken.json", "{\n  \"version\": 1,\n  nope\n}")});
  CHECK(broken.code == 2);
  CHECK(has(broken.err, "line 3"));
}

TEST_CASE("json output is deterministic") {
  std::vector<std::string> args{"validate", "--fixture", "grid:2", "--format", "json"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Report r = parse_report(a.out);
  CHECK(r.command == "validate");
  CHECK(r.inputs_digest.size() == 64);
  CHECK(parse_report(run({"validate", "--fixture", "grid:3", "--format", "json"}).out).inputs_digest != r.inputs_digest);
  CHECK(r.passed());

  Run p1 = run({"profile", "--fixture", "grid:4", "--eps", "1", "--format", "json"});
  Run p2 = run({"profile", "--fixture", "grid:4", "--eps", "1", "--format", "json"});
  CHECK(p1.out == p2.out);
  CHECK(has(p1.out, "\"exit_status\": 0"));
}

TEST_CASE("dualize and realize") {
  TempDir tmp;
  Run d = run({"dualize", "--fixture", "grid:2"});
  REQUIRE(d.code == 0);
  std::string file = tmp.write("grid2.poc.json", d.out);
  Run r = run({"realize", file});
  CHECK(r.code == 0);
  RawSpace raw = parse_space(r.out);
  CHECK(raw.points.size() == 9);
  CHECK(MedianSpace::build(raw).rank() == 2);
}

TEST_CASE("fixture directory") {
  TempDir tmp;
  tmp.write("tri.json", write_space(star(2)));
  ::setenv("MEDIAN_FIXTURE_DIR", tmp.path.c_str(), 1);
  CHECK(run({"rank", "tri.json"}).out == "1\n");
  CHECK(run({"validate", "--fixture", "tri"}).code == 0);
  CHECK(run({"rank", "--fixture", "hypercube:2"}).out == "2\n");
  ::unsetenv("MEDIAN_FIXTURE_DIR");
  CHECK(run({"rank", "tri.json"}).code == 2);
}

TEST_CASE("verify-all on a small sample") {
  Run r = run({"verify-all", "--random", "3", "--seed", "5", "--refine", "2", "--format", "json"});
  Report rep = parse_report(r.out);
  CHECK(r.code == rep.exit_status());
  CHECK(rep.checks.size() > 20);
  CHECK(run({"verify-all", "--random", "3", "--seed", "5", "--refine", "2", "--format", "json"}).out == r.out);
}

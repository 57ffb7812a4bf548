#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "median/analysis.hpp"
#include "median/duality.hpp"
#include "median/fixtures.hpp"
#include "median/io.hpp"
#include "median/verify.hpp"

namespace median {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string fixture;
  std::string format = "text";
  std::vector<std::string> set, first, second, eps;
  std::string point, orbit_of, x, y, base;
  std::uint64_t seed = 1;
  std::size_t random = 200;
  std::vector<std::size_t> refine;
};

struct Input {
  std::string text;  // canonical bytes the command depends on
  RawSpace raw;
};

std::optional<fs::path> fixture_dir() {
  if (const char* d = std::getenv("MEDIAN_FIXTURE_DIR"); d && *d) return fs::path(d);
  return std::nullopt;
}

fs::path resolve(const std::string& file) {
  fs::path p(file);
  if (fs::exists(p) || p.is_absolute()) return p;
  if (auto dir = fixture_dir(); dir && fs::exists(*dir / p)) return *dir / p;
  return p;
}

Input load_input(const Options& o) {
  if (!o.file.empty() && !o.fixture.empty()) throw UsageError("give either a file or --fixture, not both");
  if (!o.fixture.empty()) {
    if (auto dir = fixture_dir(); dir && fs::exists(*dir / (o.fixture + ".json"))) {
      std::string text = read_text(*dir / (o.fixture + ".json"));
      return {text, parse_space(text)};
    }
    RawSpace raw = build_fixture(o.fixture).raw();
    return {write_space(raw), raw};
  }
  if (o.file.empty()) throw UsageError("no input: give a space file or --fixture");
  std::string text = read_text(resolve(o.file));
  return {text, parse_space(text)};
}

PointSet points_of(const MedianSpace& s, const std::vector<std::string>& names, const char* what) {
  if (names.empty()) throw UsageError(std::string("--") + what + " needs at least one point");
  PointSet out(s.size());
  for (const auto& n : names) out.set(s.at(n));
  return out;
}

PointSet set_or_all(const MedianSpace& s, const std::vector<std::string>& names) {
  return names.empty() ? s.all() : points_of(s, names, "set");
}

PointId point_of(const MedianSpace& s, const std::string& name, const char* what) {
  if (name.empty()) throw UsageError(std::string("--") + what + " is required");
  return s.at(name);
}

Rational rational_of(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string spaced(const std::vector<std::string>& names) {
  std::string t;
  for (const auto& n : names) t += (t.empty() ? "" : " ") + n;
  return t;
}

json names_json(const MedianSpace& s, const PointSet& p) { return s.names(p); }

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::vector<std::string> args) : o_(o), out_(out), args_(std::move(args)) {}

  int report(const std::string& command, Report r, const std::string& input) {
    r.command = command;
    std::string joined;
    for (const auto& a : args_) joined += a + '\n';
    r.inputs_digest = sha256_hex(input + '\0' + joined);
    out_ << (json_mode() ? to_json(r) : to_text(r));
    return r.exit_status();
  }

  void data(const json& j, const std::string& text) { out_ << (json_mode() ? j.dump(2) + "\n" : text); }

  bool json_mode() const { return o_.format == "json"; }

 private:
  const Options& o_;
  std::ostream& out_;
  std::vector<std::string> args_;
};

int dispatch(const std::string& cmd, const Options& o, Runner& run, std::ostream& out) {
  if (cmd == "verify-all") {
    VerifyOptions v;
    v.seed = o.seed;
    v.random_spaces = o.random;
    if (!o.refine.empty()) v.refine = o.refine;
    std::string input = "seed=" + std::to_string(v.seed) + " random=" + std::to_string(v.random_spaces);
    for (auto l : v.refine) input += " refine=" + std::to_string(l);
    return run.report(cmd, verify_all(v), input);
  }
  if (cmd == "realize") {
    if (o.file.empty()) throw UsageError("realize needs a poc set file");
    std::string text = read_text(resolve(o.file));
    Realization r = realize(parse_pocset(text));
    out << write_space(r.space);
    return 0;
  }

  Input in = load_input(o);
  if (cmd == "validate") {
    Diagnostics d = validate_space(in.raw);
    Report r;
    Check& c = r.add("median space", "m(a,b,c) unique in [a,b] ∩ [b,c] ∩ [a,c]", d.ok);
    if (d.kind) c.note = std::string(to_string(*d.kind)) + ": " + d.message;
    c.witness = d.witness;
    c.number("points", in.raw.points.size());
    return run.report(cmd, r, in.text);
  }

  MedianSpace s = MedianSpace::build(in.raw);
  if (cmd == "walls") {
    json j = json::array();
    std::string text;
    for (WallId w = 0; w < s.wall_count(); ++w) {
      const Wall& wall = s.walls()[w];
      j.push_back({{"id", w}, {"weight", wall.weight.str()}, {"upper", names_json(s, wall.upper)}});
      text += "w" + std::to_string(w) + " weight=" + wall.weight.str() + " upper=" + spaced(s.names(wall.upper)) + "\n";
    }
    run.data(j, text);
    return 0;
  }
  if (cmd == "rank") {
    run.data(json{{"rank", s.rank()}}, std::to_string(s.rank()) + "\n");
    return 0;
  }
  if (cmd == "hull") {
    PointSet h = convex_hull(s, points_of(s, o.set, "set")).members();
    std::string text;
    for (const auto& n : s.names(h)) text += n + "\n";
    run.data(json{{"hull", names_json(s, h)}}, text);
    return 0;
  }
  if (cmd == "project") {
    ConvexSet c = convex_hull(s, points_of(s, o.set, "set"));
    PointId g = gate_project(c, point_of(s, o.point, "point"));
    run.data(json{{"gate", s.name(g)}}, s.name(g) + "\n");
    return 0;
  }
  if (cmd == "dualize") {
    out << write_pocset(pocset_of(s));
    return 0;
  }
  if (cmd == "roundtrip") return run.report(cmd, roundtrip_check(s), in.text);
  if (cmd == "embed-check" || cmd == "decompose") {
    ConvexSet c1 = convex_hull(s, points_of(s, o.first, "first"));
    ConvexSet c2 = convex_hull(s, points_of(s, o.second, "second"));
    if (cmd == "embed-check") return run.report(cmd, embed_check(c1, c2), in.text);
    return run.report(cmd, wall_decomposition_check(c1, c2, point_of(s, o.x, "x"), point_of(s, o.y, "y")), in.text);
  }
  if (cmd == "profile") {
    if (o.eps.empty()) throw UsageError("--eps is required");
    std::vector<Rational> eps;
    for (const auto& e : o.eps) eps.push_back(rational_of(e));
    CompactnessProfile p = compactness_profile(s, set_or_all(s, o.set), eps);
    Report r;
    Check& c = r.add("profile is non-increasing", "eps <= eps' => N(eps) >= N(eps')", p.monotone());
    std::string lines;
    for (const ProfileEntry& e : p.entries) {
      c.number("N(" + e.eps.str() + ")", e.n);
      lines += "eps=" + e.eps.str() + " N=" + std::to_string(e.n) + "\n";
    }
    if (!run.json_mode()) out << lines;
    return run.report(cmd, r, in.text);
  }
  if (cmd == "cover") {
    if (o.eps.size() != 1) throw UsageError("cover takes exactly one --eps");
    return run.report(cmd, interval_cover_check(s, set_or_all(s, o.set), point_of(s, o.base, "base"), rational_of(o.eps[0])),
                      in.text);
  }
  if (cmd == "rigidity") {
    RigidityVerdict v = rigidity_detect(s, point_of(s, o.point, "point"));
    Report r = verify_verdict(s, v);
    Check& c = r.add("verdict", "GRID_LIKE or BRANCHING", true);
    c.note = std::string(to_string(v.verdict));
    if (v.triple)
      for (Halfspace h : v.triple->sides) c.witness.push_back(label(h));
    for (const PointSet& d : v.lines) c.witness.push_back("{" + spaced(s.names(d)) + "}");
    if (!run.json_mode()) out << "verdict: " << to_string(v.verdict) << "\n";
    return run.report(cmd, r, in.text);
  }
  if (cmd == "group") {
    IsometryGroup g = automorphism_group(s);
    Report r = group_check(s, g);
    r.checks.front().number("generators", g.generators.size());
    if (!o.point.empty()) {
      PointId x0 = s.at(o.point);
      r.merge(stabilizer_wall_check(s, stabilizer(g, x0), x0), "");
      if (!o.orbit_of.empty()) r.merge(stabilizer_orbit_check(s, g, x0, s.at(o.orbit_of)), "");
    }
    return run.report(cmd, r, in.text);
  }
  throw UsageError("unknown command " + cmd);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite median spaces: walls, convexity, duality and structure checks", "medianspace"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) {
    sub->add_option("file", o.file,
                    sub->get_name() == "realize" ? "poc set file (PocSetFile JSON)" : "space file (SpaceFile JSON)");
    sub->add_option("--fixture", o.fixture, "built-in fixture, e.g. grid:4 or product(star:3,path:3)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"validate", "check the median axioms"},
      {"walls", "list walls with weights and upper sides"},
      {"rank", "print the rank"},
      {"hull", "convex hull of --set"},
      {"project", "gate of --point in the hull of --set"},
      {"dualize", "write the measured poc set of halfspaces"},
      {"realize", "realize a poc set file as a median space"},
      {"roundtrip", "check M(H(X)) = X"},
      {"embed-check", "l1 embedding of the hull of two strongly separated sets"},
      {"decompose", "wall decomposition of W(x,y) for two strongly separated sets"},
      {"profile", "compactness profile over --set (default: all points)"},
      {"cover", "cover --set by intervals from --base"},
      {"rigidity", "grid-like or branching at --point"},
      {"group", "automorphism group, stabilizer checks at --point"},
      {"verify-all", "run every acceptance property"},
  };
  for (const Spec& sp : specs) {
    CLI::App* sub = app.add_subcommand(sp.name, sp.help);
    std::string name = sp.name;
    if (name == "verify-all") {
      sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
      sub->add_option("--seed", o.seed, "seed for random spaces");
      sub->add_option("--random", o.random, "number of random spaces");
      sub->add_option("--refine", o.refine, "eps-grid refinement levels");
      continue;
    }
    input(sub);
    if (name == "hull" || name == "project" || name == "profile" || name == "cover") sub->add_option("--set", o.set, "point names");
    if (name == "project" || name == "rigidity" || name == "group") sub->add_option("--point", o.point, "point name");
    if (name == "group") sub->add_option("--orbit", o.orbit_of, "orbit of this point under Stab(--point)");
    if (name == "embed-check" || name == "decompose") {
      sub->add_option("--first", o.first, "points spanning C1");
      sub->add_option("--second", o.second, "points spanning C2");
    }
    if (name == "decompose") {
      sub->add_option("--x", o.x, "first point");
      sub->add_option("--y", o.y, "second point");
    }
    if (name == "profile" || name == "cover") sub->add_option("--eps", o.eps, "scale, e.g. 1/10");
    if (name == "cover") sub->add_option("--base", o.base, "base point x0");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  Runner run(o, out, args);
  try {
    return dispatch(cmd, o, run, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what();
    if (!e.witness().empty()) {
      err << " (witness:";
      for (const auto& w : e.witness()) err << " " << w;
      err << ")";
    }
    err << "\n";
    return 2;
  }
}

}  // namespace median

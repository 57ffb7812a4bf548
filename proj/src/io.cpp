#include "median/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace median {

using nlohmann::json;

namespace {

class Source {
 public:
  explicit Source(std::string_view text) : text_(text) {}

  [[noreturn]] void fail_at(const std::string& msg, std::size_t offset) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < std::min(offset, text_.size()); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  /// Offset of the nth occurrence of token at or after `from`, or of `from` itself.
  std::size_t find(std::string_view token, std::size_t nth = 0, std::size_t from = 0) const {
    std::size_t pos = from;
    for (std::size_t k = 0;; ++k) {
      std::size_t hit = text_.find(token, pos);
      if (hit == std::string_view::npos) return from;
      if (k == nth) return hit;
      pos = hit + 1;
    }
  }

  [[noreturn]] void fail_key(const std::string& msg, std::string_view key, std::size_t nth = 0) const {
    fail_at(msg, find("\"" + std::string(key) + "\"", nth));
  }

  json parse() const {
    try {
      return json::parse(text_.begin(), text_.end());
    } catch (const json::parse_error& e) {
      fail_at("malformed JSON: " + std::string(e.what()), e.byte == 0 ? 0 : e.byte - 1);
    }
  }

 private:
  std::string_view text_;
};

const json& member(const Source& src, const json& obj, const char* key, std::size_t nth = 0) {
  auto it = obj.find(key);
  if (it == obj.end()) src.fail_at(std::string("missing field '") + key + "'", src.find("{", nth));
  return *it;
}

void check_version(const Source& src, const json& j) {
  if (!j.is_object()) src.fail_at("expected a JSON object", 0);
  const json& v = member(src, j, "version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    src.fail_key("unsupported version", "version");
}

std::string text_of(const Source& src, const json& v, std::string_view key, std::size_t nth) {
  if (!v.is_string()) src.fail_key("expected a string", key, nth);
  return v.get<std::string>();
}

Rational rational_of(const Source& src, const json& v, std::string_view key, std::size_t nth) {
  std::string t = text_of(src, v, key, nth);
  try {
    return Rational::parse(t);
  } catch (const std::invalid_argument& e) {
    src.fail_key(e.what(), key, nth);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RawSpace canonical(RawSpace raw) {
  for (RawEdge& e : raw.edges)
    if (e.v < e.u) std::swap(e.u, e.v);
  std::sort(raw.edges.begin(), raw.edges.end(), [](const RawEdge& a, const RawEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v) || (std::tie(a.u, a.v) == std::tie(b.u, b.v) && a.weight < b.weight);
  });
  std::sort(raw.rows.begin(), raw.rows.end());
  return raw;
}

std::string write_space(const RawSpace& input) {
  RawSpace raw = canonical(input);
  auto name = [&](PointId p) { return raw.points.at(p); };
  json j;
  j["version"] = kFormatVersion;
  j["kind"] = raw.form == Form::graph ? "graph" : "table";
  j["points"] = raw.points;
  if (raw.form == Form::graph) {
    json edges = json::array();
    for (const RawEdge& e : raw.edges) edges.push_back({{"u", name(e.u)}, {"v", name(e.v)}, {"weight", e.weight.str()}});
    j["edges"] = std::move(edges);
  } else {
    json rows = json::array();
    for (const MedianRow& r : raw.rows) rows.push_back({name(r[0]), name(r[1]), name(r[2]), name(r[3])});
    j["medians"] = std::move(rows);
  }
  return dump(j);
}

RawSpace parse_space(std::string_view text) {
  Source src(text);
  json j = src.parse();
  check_version(src, j);
  RawSpace raw;
  const json& kind = member(src, j, "kind");
  if (kind == "graph")
    raw.form = Form::graph;
  else if (kind == "table")
    raw.form = Form::table;
  else
    src.fail_key("kind must be \"graph\" or \"table\"", "kind");

  const json& points = member(src, j, "points");
  if (!points.is_array()) src.fail_key("points must be an array", "points");
  std::unordered_map<std::string, PointId> index;
  for (const json& p : points) {
    std::string nm = text_of(src, p, "points", 0);
    if (!index.emplace(nm, raw.points.size()).second)
      src.fail_at("duplicate point '" + nm + "'", src.find("\"" + nm + "\"", 1));
    raw.points.push_back(nm);
  }
  auto resolve = [&](const json& v, std::string_view key, std::size_t nth) {
    std::string nm = text_of(src, v, key, nth);
    auto it = index.find(nm);
    if (it == index.end()) src.fail_key("unknown point '" + nm + "'", key, nth);
    return it->second;
  };

  if (raw.form == Form::graph) {
    const json& edges = member(src, j, "edges");
    if (!edges.is_array()) src.fail_key("edges must be an array", "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const json& e = edges[i];
      if (!e.is_object()) src.fail_key("edge must be an object", "edges");
      for (const char* key : {"u", "v", "weight"})
        if (!e.contains(key)) src.fail_at(std::string("edge missing field '") + key + "'", src.find("{", i + 1));
      raw.edges.push_back({resolve(e["u"], "u", i), resolve(e["v"], "v", i), rational_of(src, e["weight"], "weight", i)});
    }
  } else {
    const json& rows = member(src, j, "medians");
    if (!rows.is_array()) src.fail_key("medians must be an array", "medians");
    std::size_t start = src.find("\"medians\"");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const json& r = rows[i];
      if (!r.is_array() || r.size() != 4) src.fail_at("median row must list four points", src.find("[", i + 1, start));
      MedianRow row{};
      for (std::size_t k = 0; k < 4; ++k) {
        if (!r[k].is_string()) src.fail_at("expected a point name", src.find("[", i + 1, start));
        auto it = index.find(r[k].get<std::string>());
        if (it == index.end())
          src.fail_at("unknown point '" + r[k].get<std::string>() + "'", src.find("[", i + 1, start));
        row[k] = it->second;
      }
      raw.rows.push_back(row);
    }
  }
  return canonical(std::move(raw));
}

std::string write_pocset(const MeasuredPocSet& p) {
  json j;
  j["version"] = kFormatVersion;
  json elements = json::array();
  json pairs = json::array();
  json weights = json::array();
  for (const auto& ps : p.pairs()) {
    elements.push_back(ps.first);
    elements.push_back(ps.second);
    pairs.push_back({ps.first, ps.second});
    weights.push_back(ps.weight.str());
  }
  json order = json::array();
  for (auto [a, b] : p.hasse()) order.push_back({p.name(a), p.name(b)});
  j["elements"] = std::move(elements);
  j["pairs"] = std::move(pairs);
  j["weights"] = std::move(weights);
  j["order"] = std::move(order);
  if (p.basepoint()) {
    json base = json::array();
    for (std::size_t k = 0; k < p.pair_count(); ++k)
      base.push_back(p.name(MeasuredPocSet::element(k, p.basepoint()->choice[k])));
    j["basepoint"] = std::move(base);
  }
  return dump(j);
}

MeasuredPocSet parse_pocset(std::string_view text) {
  Source src(text);
  json j = src.parse();
  check_version(src, j);
  const json& elements = member(src, j, "elements");
  const json& pairs = member(src, j, "pairs");
  const json& weights = member(src, j, "weights");
  const json& order = member(src, j, "order");
  if (!elements.is_array()) src.fail_key("elements must be an array", "elements");
  if (!pairs.is_array()) src.fail_key("pairs must be an array", "pairs");
  if (!weights.is_array() || weights.size() != pairs.size())
    src.fail_key("weights must list one weight per pair", "weights");
  if (!order.is_array()) src.fail_key("order must be an array", "order");

  std::vector<std::string> listed;
  for (const json& e : elements) listed.push_back(text_of(src, e, "elements", 0));
  std::size_t pairs_at = src.find("\"pairs\"");
  std::vector<MeasuredPocSet::PairSpec> specs;
  std::vector<std::string> paired;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const json& pr = pairs[k];
    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
      src.fail_at("pair must hold two element names", src.find("[", k + 1, pairs_at));
    specs.push_back({pr[0].get<std::string>(), pr[1].get<std::string>(), rational_of(src, weights[k], "weights", 0)});
    paired.push_back(specs.back().first);
    paired.push_back(specs.back().second);
  }
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(listed) != sorted(paired)) src.fail_key("elements do not match the pairs", "elements");

  std::unordered_map<std::string, std::size_t> id;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    id[specs[k].first] = MeasuredPocSet::element(k, false);
    id[specs[k].second] = MeasuredPocSet::element(k, true);
  }
  std::size_t order_at = src.find("\"order\"");
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const json& rel = order[i];
    std::size_t where = src.find("[", i + 1, order_at);
    if (!rel.is_array() || rel.size() != 2 || !rel[0].is_string() || !rel[1].is_string())
      src.fail_at("order relation must hold two element names", where);
    auto a = id.find(rel[0].get<std::string>());
    auto b = id.find(rel[1].get<std::string>());
    if (a == id.end() || b == id.end()) src.fail_at("order relation names an unknown element", where);
    less.emplace_back(a->second, b->second);
  }

  std::optional<MeasuredPocSet> p;
  try {
    p = MeasuredPocSet::make(std::move(specs), less);
  } catch (const Error& e) {
    src.fail_at(e.what(), order_at);
  }
  if (auto base = j.find("basepoint"); base != j.end()) {
    if (!base->is_array() || base->size() != p->pair_count())
      src.fail_key("basepoint must choose one element per pair", "basepoint");
    Ultrafilter u;
    for (std::size_t k = 0; k < base->size(); ++k) {
      std::string nm = text_of(src, (*base)[k], "basepoint", 0);
      auto it = id.find(nm);
      if (it == id.end() || MeasuredPocSet::pair_of(it->second) != k)
        src.fail_key("basepoint entry '" + nm + "' is not in pair " + std::to_string(k), "basepoint");
      u.choice.push_back(it->second & 1U);
    }
    try {
      p->set_basepoint(std::move(u));
    } catch (const Error& e) {
      src.fail_key(e.what(), "basepoint");
    }
  }
  return std::move(*p);
}

Report parse_report(std::string_view text) {
  Source src(text);
  json j = src.parse();
  if (!j.is_object()) src.fail_at("expected a JSON object", 0);
  Report r;
  r.command = text_of(src, member(src, j, "command"), "command", 0);
  r.inputs_digest = text_of(src, member(src, j, "inputs_digest"), "inputs_digest", 0);
  const json& checks = member(src, j, "checks");
  if (!checks.is_array()) src.fail_key("checks must be an array", "checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const json& c = checks[i];
    if (!c.is_object()) src.fail_key("check must be an object", "checks");
    Check& out = r.add(text_of(src, member(src, c, "name"), "name", i),
                       text_of(src, member(src, c, "paper_anchor"), "paper_anchor", i), true);
    std::string status = text_of(src, member(src, c, "status"), "status", i);
    if (status != "pass" && status != "fail") src.fail_key("status must be pass or fail", "status", i);
    out.pass = status == "pass";
    if (auto w = c.find("witness"); w != c.end())
      for (const json& x : *w) out.witness.push_back(text_of(src, x, "witness", 0));
    for (const auto& [k, v] : member(src, c, "numbers").items()) out.numbers.emplace_back(k, text_of(src, v, k, 0));
    if (auto n = c.find("note"); n != c.end()) out.note = text_of(src, *n, "note", 0);
  }
  const json& status = member(src, j, "exit_status");
  if (!status.is_number_integer() || status.get<int>() != r.exit_status())
    src.fail_key("exit_status disagrees with the checks", "exit_status");
  return r;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadParams, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace median

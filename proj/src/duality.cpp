#include "median/duality.hpp"

#include <algorithm>
#include <unordered_set>

#include "median/halfspaces.hpp"
#include "median/isometry.hpp"

namespace median {

MeasuredPocSet MeasuredPocSet::make(std::vector<PairSpec> pairs,
                                    std::span<const std::pair<std::size_t, std::size_t>> less) {
  MeasuredPocSet p;
  p.pairs_ = std::move(pairs);
  std::size_t e_count = p.element_count();

  std::unordered_set<std::string> names{"0", "0*"};
  for (const PairSpec& ps : p.pairs_) {
    for (const std::string* nm : {&ps.first, &ps.second})
      if (nm->empty() || !names.insert(*nm).second)
        throw Error(ErrorKind::BadParams, "duplicate or empty element name '" + *nm + "'", {*nm});
    if (ps.weight.sign() <= 0)
      throw Error(ErrorKind::BadParams, "pair " + ps.first + "/" + ps.second + " has non-positive weight",
                  {ps.first, ps.second});
  }

  p.up_.assign(e_count, ElementSet(e_count));
  p.up_[zero] = ElementSet::full(e_count);
  for (std::size_t e = 0; e < e_count; ++e) {
    p.up_[e].set(e);
    p.up_[e].set(zero_star);
  }
  for (auto [a, b] : less) {
    if (a < 2 || b < 2 || a >= e_count || b >= e_count)
      throw Error(ErrorKind::BadParams, "order relation must relate proper elements");
    if (a == b) throw Error(ErrorKind::BadParams, "element " + p.name(a) + " below itself", {p.name(a)});
    p.up_[a].set(b);
    p.up_[star(b)].set(star(a));
  }
  for (std::size_t k = 0; k < e_count; ++k)
    for (std::size_t i = 0; i < e_count; ++i)
      if (p.up_[i].test(k)) p.up_[i] |= p.up_[k];

  for (std::size_t a = 2; a < e_count; ++a) {
    if (p.leq(a, star(a)))
      throw Error(ErrorKind::BadParams, "element " + p.name(a) + " lies below its complement", {p.name(a)});
    for (std::size_t b = a + 1; b < e_count; ++b)
      if (p.leq(a, b) && p.leq(b, a))
        throw Error(ErrorKind::BadParams, "order has a cycle through " + p.name(a) + " and " + p.name(b),
                    {p.name(a), p.name(b)});
  }
  return p;
}

const std::string& MeasuredPocSet::name(std::size_t e) const {
  static const std::string z = "0";
  static const std::string zs = "0*";
  if (e == zero) return z;
  if (e == zero_star) return zs;
  const PairSpec& ps = pairs_.at(pair_of(e));
  return (e & 1U) ? ps.second : ps.first;
}

std::optional<std::size_t> MeasuredPocSet::find(std::string_view nm) const {
  for (std::size_t e = 0; e < element_count(); ++e)
    if (name(e) == nm) return e;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> MeasuredPocSet::hasse() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t e_count = element_count();
  for (std::size_t a = 2; a < e_count; ++a)
    for (std::size_t b = 2; b < e_count; ++b) {
      if (!less(a, b)) continue;
      bool covering = true;
      for (std::size_t c = 2; c < e_count && covering; ++c)
        if (less(a, c) && less(c, b)) covering = false;
      if (covering) out.emplace_back(a, b);
    }
  return out;
}

ElementSet MeasuredPocSet::chosen(const Ultrafilter& u) const {
  ElementSet s(element_count());
  for (std::size_t k = 0; k < pair_count(); ++k) s.set(element(k, u.choice[k]));
  return s;
}

bool MeasuredPocSet::is_ultrafilter(const Ultrafilter& u) const {
  if (u.choice.size() != pair_count()) return false;
  ElementSet s = chosen(u);
  s.set(zero_star);
  bool ok = true;
  s.for_each([&](std::size_t e) {
    if (e >= 2 && !up_[e].subset_of(s)) ok = false;
  });
  return ok;
}

void MeasuredPocSet::set_basepoint(Ultrafilter u) {
  if (!is_ultrafilter(u)) throw Error(ErrorKind::BadParams, "basepoint is not an ultrafilter");
  basepoint_ = std::move(u);
}

Ultrafilter principal_ultrafilter(const MedianSpace& s, PointId x) {
  Ultrafilter u;
  u.choice.resize(s.wall_count());
  for (WallId w = 0; w < s.wall_count(); ++w) u.choice[w] = s.signature(x).test(w);
  return u;
}

MeasuredPocSet pocset_of(const MedianSpace& s) {
  std::vector<MeasuredPocSet::PairSpec> pairs;
  std::vector<PointSet> members;
  for (WallId w = 0; w < s.wall_count(); ++w) {
    pairs.push_back({label({w, false}), label({w, true}), s.walls()[w].weight});
    members.push_back(s.members({w, false}));
    members.push_back(s.members({w, true}));
  }
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b)
      if (a != b && members[a].subset_of(members[b]) && members[a] != members[b]) less.emplace_back(a + 2, b + 2);
  MeasuredPocSet p = MeasuredPocSet::make(std::move(pairs), less);
  p.set_basepoint(principal_ultrafilter(s, 0));
  return p;
}

std::vector<Ultrafilter> ultrafilters(const MeasuredPocSet& p) {
  std::size_t m = p.pair_count();
  std::vector<signed char> side(m, -1);
  std::vector<std::size_t> trail;
  std::vector<Ultrafilter> out;

  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      side[trail.back()] = -1;
      trail.pop_back();
    }
  };
  // Choosing e forces every element above it.
  auto choose = [&](std::size_t e) {
    bool ok = true;
    for (std::size_t q = 2; q < p.element_count() && ok; ++q) {
      if (!p.leq(e, q)) continue;
      std::size_t k = MeasuredPocSet::pair_of(q);
      signed char want = static_cast<signed char>(q & 1U);
      if (side[k] == -1) {
        side[k] = want;
        trail.push_back(k);
      } else if (side[k] != want) {
        ok = false;
      }
    }
    return ok;
  };

  auto rec = [&](auto& self, std::size_t k) -> void {
    if (k == m) {
      Ultrafilter u;
      u.choice.resize(m);
      for (std::size_t i = 0; i < m; ++i) u.choice[i] = side[i] == 1;
      out.push_back(std::move(u));
      return;
    }
    if (side[k] != -1) {
      self(self, k + 1);
      return;
    }
    for (bool second : {false, true}) {
      std::size_t mark = trail.size();
      if (choose(MeasuredPocSet::element(k, second))) self(self, k + 1);
      undo_to(mark);
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

WallMask pack(const Ultrafilter& u) {
  WallMask w(u.choice.size());
  for (std::size_t i = 0; i < u.choice.size(); ++i)
    if (u.choice[i]) w.set(i);
  return w;
}

std::string choice_name(const Ultrafilter& u) {
  if (u.choice.empty()) return "-";
  std::string s;
  for (bool b : u.choice) s += b ? '1' : '0';
  return s;
}

std::size_t index_of(const std::vector<Ultrafilter>& sorted, const Ultrafilter& u) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), u);
  if (it == sorted.end() || *it != u) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

Realization realize(const MeasuredPocSet& p) {
  std::vector<Ultrafilter> us = ultrafilters(p);
  std::size_t n = us.size();
  std::vector<WallMask> packed;
  packed.reserve(n);
  for (const auto& u : us) packed.push_back(pack(u));

  RawSpace raw;
  raw.form = Form::graph;
  for (const auto& u : us) raw.points.push_back(choice_name(u));
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) {
      WallMask diff = packed[i] ^ packed[j];
      if (diff.count() == 1) raw.edges.push_back({i, j, p.weight(*diff.first())});
    }

  std::unordered_set<WallMask, IndexSetHash> present(packed.begin(), packed.end());
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      WallMask ab = packed[a] & packed[b];
      WallMask aob = packed[a] | packed[b];
      for (PointId c = b + 1; c < n; ++c) ensure(present.count(ab | (aob & packed[c])) > 0, "majority of ultrafilters");
    }

  Realization r{MedianSpace::build(std::move(raw)), std::move(us)};
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) {
      Rational d(0);
      (packed[i] ^ packed[j]).for_each([&](std::size_t k) { d += p.weight(k); });
      ensure(d == r.space.dist(i, j), "realized distance is the measure of differing walls");
    }
  return r;
}

MeasuredPocSet disjoint_union(const MeasuredPocSet& a, const MeasuredPocSet& b) {
  bool clash = false;
  for (const auto& pa : a.pairs())
    for (const auto& pb : b.pairs())
      for (const std::string* x : {&pa.first, &pa.second})
        if (*x == pb.first || *x == pb.second) clash = true;
  std::vector<MeasuredPocSet::PairSpec> pairs;
  for (auto ps : a.pairs()) {
    if (clash) {
      ps.first = "1." + ps.first;
      ps.second = "1." + ps.second;
    }
    pairs.push_back(std::move(ps));
  }
  for (auto ps : b.pairs()) {
    if (clash) {
      ps.first = "2." + ps.first;
      ps.second = "2." + ps.second;
    }
    pairs.push_back(std::move(ps));
  }
  std::size_t shift = 2 * a.pair_count();
  auto less = a.hasse();
  for (auto [x, y] : b.hasse()) less.emplace_back(x + shift, y + shift);
  MeasuredPocSet u = MeasuredPocSet::make(std::move(pairs), less);
  if (a.basepoint() && b.basepoint()) {
    Ultrafilter base = *a.basepoint();
    base.choice.insert(base.choice.end(), b.basepoint()->choice.begin(), b.basepoint()->choice.end());
    u.set_basepoint(std::move(base));
  }
  return u;
}

ProductSpace l1_product(const MedianSpace& a, const MedianSpace& b) {
  std::size_t na = a.size();
  std::size_t nb = b.size();
  RawSpace raw;
  raw.form = Form::graph;
  std::vector<std::pair<PointId, PointId>> coords;
  for (PointId i = 0; i < na; ++i)
    for (PointId j = 0; j < nb; ++j) {
      raw.points.push_back(a.name(i) + "|" + b.name(j));
      coords.emplace_back(i, j);
    }
  for (const SkeletonEdge& e : a.skeleton())
    for (PointId j = 0; j < nb; ++j) raw.edges.push_back({e.u * nb + j, e.v * nb + j, a.walls()[e.wall].weight});
  for (PointId i = 0; i < na; ++i)
    for (const SkeletonEdge& e : b.skeleton()) raw.edges.push_back({i * nb + e.u, i * nb + e.v, b.walls()[e.wall].weight});
  std::sort(raw.edges.begin(), raw.edges.end(),
            [](const RawEdge& x, const RawEdge& y) { return std::pair{x.u, x.v} < std::pair{y.u, y.v}; });
  return ProductSpace{MedianSpace::build(std::move(raw)), std::move(coords)};
}

MeasuredPocSet relabel(const MeasuredPocSet& p, std::span<const std::size_t> pair_order, const std::vector<bool>& flip) {
  std::size_t m = p.pair_count();
  if (pair_order.size() != m || flip.size() != m) throw Error(ErrorKind::BadParams, "relabelling has the wrong size");
  std::vector<std::size_t> new_pair(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (pair_order[i] >= m || new_pair[pair_order[i]] != m)
      throw Error(ErrorKind::BadParams, "pair order is not a permutation");
    new_pair[pair_order[i]] = i;
  }
  auto map = [&](std::size_t e) {
    if (e < 2) return e;
    std::size_t k = MeasuredPocSet::pair_of(e);
    bool second = (e & 1U) != 0;
    return MeasuredPocSet::element(new_pair[k], second != flip[new_pair[k]]);
  };
  std::vector<MeasuredPocSet::PairSpec> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    auto ps = p.pairs()[pair_order[i]];
    if (flip[i]) std::swap(ps.first, ps.second);
    pairs.push_back(std::move(ps));
  }
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (auto [x, y] : p.hasse()) less.emplace_back(map(x), map(y));
  MeasuredPocSet q = MeasuredPocSet::make(std::move(pairs), less);
  if (p.basepoint()) {
    Ultrafilter u;
    u.choice.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t e = map(MeasuredPocSet::element(k, p.basepoint()->choice[k]));
      u.choice[MeasuredPocSet::pair_of(e)] = (e & 1U) != 0;
    }
    q.set_basepoint(std::move(u));
  }
  return q;
}

bool is_isomorphism(const MeasuredPocSet& a, const MeasuredPocSet& b, std::span<const std::size_t> f) {
  std::size_t n = a.element_count();
  if (b.element_count() != n || f.size() != n) return false;
  if (f[MeasuredPocSet::zero] != MeasuredPocSet::zero || f[MeasuredPocSet::zero_star] != MeasuredPocSet::zero_star)
    return false;
  std::vector<bool> hit(n, false);
  for (std::size_t e = 0; e < n; ++e) {
    if (f[e] >= n || hit[f[e]]) return false;
    hit[f[e]] = true;
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (f[MeasuredPocSet::star(e)] != MeasuredPocSet::star(f[e])) return false;
    if (e >= 2 && a.weight(MeasuredPocSet::pair_of(e)) != b.weight(MeasuredPocSet::pair_of(f[e]))) return false;
    for (std::size_t g = 0; g < n; ++g)
      if (a.leq(e, g) != b.leq(f[e], f[g])) return false;
  }
  return true;
}

Report roundtrip_check(const MedianSpace& s) {
  Report r;
  MeasuredPocSet p = pocset_of(s);
  std::vector<Ultrafilter> us = ultrafilters(p);

  std::vector<std::size_t> image(s.size());
  bool all_ultra = true;
  Check& principal = r.add("principal ultrafilters", "U_x = {h : x in h}", true);
  for (PointId x = 0; x < s.size(); ++x) {
    Ultrafilter u = principal_ultrafilter(s, x);
    if (!p.is_ultrafilter(u)) {
      all_ultra = false;
      principal.witness.push_back(s.name(x));
    }
    image[x] = index_of(us, u);
  }
  principal.pass = all_ultra;

  std::vector<bool> hit(us.size(), false);
  bool bijective = us.size() == s.size();
  for (std::size_t i : image) {
    if (i >= us.size() || hit[i]) {
      bijective = false;
      break;
    }
    hit[i] = true;
  }
  Check& bij = r.add("bijection onto ultrafilters", "M(H(X)) = X", bijective);
  bij.number("points", s.size()).number("ultrafilters", us.size());

  Realization dual = realize(p);
  Check& iso = r.add("distance preserved", "d(x,y) = mu(W(x,y))", bijective);
  if (bijective) {
    MapCheck mc = check_isometry(s, dual.space, image);
    iso.pass = mc.ok();
    if (mc.defect) {
      iso.witness = {s.name(mc.defect->a), s.name(mc.defect->b)};
      iso.number("source", mc.defect->source).number("target", mc.defect->target);
    }
  }
  return r;
}

Report contravariance_check(const MeasuredPocSet& a, const MeasuredPocSet& b) {
  Report r;
  Realization ra = realize(a);
  Realization rb = realize(b);
  Realization ru = realize(disjoint_union(a, b));
  ProductSpace prod = l1_product(ra.space, rb.space);
  std::size_t ma = a.pair_count();
  std::vector<PointId> map(ru.space.size());
  bool found = true;
  for (PointId i = 0; i < ru.space.size(); ++i) {
    const auto& ch = ru.points[i].choice;
    Ultrafilter ua{std::vector<bool>(ch.begin(), ch.begin() + static_cast<std::ptrdiff_t>(ma))};
    Ultrafilter ub{std::vector<bool>(ch.begin() + static_cast<std::ptrdiff_t>(ma), ch.end())};
    std::size_t ia = index_of(ra.points, ua);
    std::size_t ib = index_of(rb.points, ub);
    if (ia >= ra.points.size() || ib >= rb.points.size()) {
      found = false;
      map[i] = 0;
      continue;
    }
    map[i] = ia * rb.space.size() + ib;
  }
  Check& c = r.add("realization of disjoint union is the l1 product", "M(P1 ⊔ P2) = M(P1) x M(P2)", found);
  c.number("union points", ru.space.size()).number("product points", prod.space.size());
  if (found) {
    MapCheck mc = check_isometry(ru.space, prod.space, map);
    c.pass = mc.ok();
    if (mc.defect) {
      c.witness = {ru.space.name(mc.defect->a), ru.space.name(mc.defect->b)};
      c.number("source", mc.defect->source).number("target", mc.defect->target);
    }
  }
  return r;
}

Report product_pocset_check(const MedianSpace& a, const MedianSpace& b) {
  Report r;
  ProductSpace prod = l1_product(a, b);
  const MedianSpace& s = prod.space;
  MeasuredPocSet p = pocset_of(s);
  MeasuredPocSet q = disjoint_union(pocset_of(a), pocset_of(b));
  Check& count = r.add("wall count", "H(X1 x X2) = H(X1) ⊔ H(X2)", p.pair_count() == q.pair_count());
  count.number("product walls", p.pair_count()).number("factor walls", q.pair_count());
  if (!count.pass) return r;

  std::vector<std::size_t> f(p.element_count());
  f[0] = 0;
  f[1] = 1;
  std::vector<bool> seen(s.wall_count(), false);
  for (const SkeletonEdge& e : s.skeleton()) {
    if (seen[e.wall]) continue;
    seen[e.wall] = true;
    auto [a1, b1] = prod.coords[e.u];
    auto [a2, b2] = prod.coords[e.v];
    std::size_t target_wall;
    bool target_upper;
    if (a1 != a2) {
      WallMask d = a.signature(a1) ^ a.signature(a2);
      target_wall = *d.first();
      target_upper = a.signature(a1).test(target_wall);
    } else {
      WallMask d = b.signature(b1) ^ b.signature(b2);
      target_wall = a.wall_count() + *d.first();
      target_upper = b.signature(b1).test(*d.first());
    }
    bool source_upper = s.signature(e.u).test(e.wall);
    f[MeasuredPocSet::element(e.wall, source_upper)] = MeasuredPocSet::element(target_wall, target_upper);
    f[MeasuredPocSet::element(e.wall, !source_upper)] = MeasuredPocSet::element(target_wall, !target_upper);
  }
  r.add("canonical identification is a poc set isomorphism", "H(X1 x X2) = H(X1) ⊔ H(X2)", is_isomorphism(p, q, f));
  return r;
}

}  // namespace median

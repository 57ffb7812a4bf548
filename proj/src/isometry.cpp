#include "median/isometry.hpp"

#include <algorithm>

namespace median {
namespace {

std::vector<std::vector<Rational>> distance_profiles(const MedianSpace& s) {
  std::vector<std::vector<Rational>> out(s.size());
  for (PointId p = 0; p < s.size(); ++p) {
    for (PointId q = 0; q < s.size(); ++q) out[p].push_back(s.dist(p, q));
    std::sort(out[p].begin(), out[p].end());
  }
  return out;
}

}  // namespace

MapCheck check_isometry(const MedianSpace& from, const MedianSpace& to, std::span<const PointId> map) {
  MapCheck r;
  if (map.size() != from.size() || from.size() != to.size()) return r;
  std::vector<bool> hit(to.size(), false);
  r.bijective = true;
  for (PointId p : map) {
    if (p >= to.size() || hit[p]) {
      r.bijective = false;
      break;
    }
    hit[p] = true;
  }
  if (!r.bijective) return r;
  for (PointId a = 0; a < from.size() && !r.defect; ++a)
    for (PointId b = a + 1; b < from.size(); ++b)
      if (from.dist(a, b) != to.dist(map[a], map[b])) {
        r.defect = IsometryDefect{a, b, from.dist(a, b), to.dist(map[a], map[b])};
        break;
      }
  return r;
}

void for_each_isometry(const MedianSpace& a, const MedianSpace& b,
                       const std::function<bool(std::span<const PointId>)>& visit) {
  std::size_t n = a.size();
  if (n != b.size()) return;
  auto pa = distance_profiles(a);
  auto pb = distance_profiles(b);
  std::vector<PointId> map(n);
  std::vector<bool> used(n, false);
  bool stop = false;

  auto rec = [&](auto& self, PointId i) -> void {
    if (stop) return;
    if (i == n) {
      if (!visit(map)) stop = true;
      return;
    }
    for (PointId c = 0; c < n && !stop; ++c) {
      if (used[c] || pa[i] != pb[c]) continue;
      bool fits = true;
      for (PointId j = 0; j < i && fits; ++j) fits = a.dist(i, j) == b.dist(c, map[j]);
      if (!fits) continue;
      used[c] = true;
      map[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  rec(rec, 0);
}

std::optional<std::vector<PointId>> find_isometry(const MedianSpace& a, const MedianSpace& b) {
  std::optional<std::vector<PointId>> found;
  for_each_isometry(a, b, [&](std::span<const PointId> m) {
    found.emplace(m.begin(), m.end());
    return false;
  });
  return found;
}

}  // namespace median

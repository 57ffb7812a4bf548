#pragma once
// Brute-force reference computations. They only read the raw graph and never
// call into the library's algorithms.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "median/space.hpp"

namespace oracle {

using median::Rational;
using Set = std::vector<bool>;

class Metric {
 public:
  explicit Metric(const median::RawSpace& raw) : n_(raw.points.size()), d_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) d_[i * n_ + i] = Rational(0);
    for (const auto& e : raw.edges) {
      auto& uv = d_[e.u * n_ + e.v];
      if (!uv || e.weight < *uv) uv = d_[e.v * n_ + e.u] = e.weight;
    }
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
          const auto& ik = d_[i * n_ + k];
          const auto& kj = d_[k * n_ + j];
          if (!ik || !kj) continue;
          Rational via = *ik + *kj;
          auto& ij = d_[i * n_ + j];
          if (!ij || via < *ij) ij = via;
        }
  }
  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return *d_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<std::optional<Rational>> d_;
};

inline Set interval(const Metric& d, std::size_t a, std::size_t b) {
  Set out(d.size());
  for (std::size_t x = 0; x < d.size(); ++x) out[x] = d(a, x) + d(x, b) == d(a, b);
  return out;
}

inline std::vector<std::size_t> medians(const Metric& d, std::size_t a, std::size_t b, std::size_t c) {
  std::vector<std::size_t> out;
  Set ab = interval(d, a, b), bc = interval(d, b, c), ac = interval(d, a, c);
  for (std::size_t x = 0; x < d.size(); ++x)
    if (ab[x] && bc[x] && ac[x]) out.push_back(x);
  return out;
}

inline bool convex(const Metric& d, const Set& s) {
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = 0; b < d.size(); ++b) {
      if (!s[a] || !s[b]) continue;
      Set iv = interval(d, a, b);
      for (std::size_t x = 0; x < d.size(); ++x)
        if (iv[x] && !s[x]) return false;
    }
  return true;
}

inline Set hull(const Metric& d, Set s) {
  for (bool grew = true; grew;) {
    grew = false;
    Set next = s;
    for (std::size_t a = 0; a < d.size(); ++a)
      for (std::size_t b = 0; b < d.size(); ++b)
        if (s[a] && s[b]) {
          Set iv = interval(d, a, b);
          for (std::size_t x = 0; x < d.size(); ++x) next[x] = next[x] || iv[x];
        }
    grew = next != s;
    s = std::move(next);
  }
  return s;
}

/// Nearest points of s to x.
inline std::vector<std::size_t> nearest(const Metric& d, const Set& s, std::size_t x) {
  std::optional<Rational> best;
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < d.size(); ++y) {
    if (!s[y]) continue;
    if (!best || d(x, y) < *best) {
      best = d(x, y);
      out = {y};
    } else if (d(x, y) == *best) {
      out.push_back(y);
    }
  }
  return out;
}

inline Rational dist_to(const Metric& d, std::size_t x, const Set& s) { return d(x, nearest(d, s, x).front()); }

/// Bipartitions with both sides convex; returns the side without point 0.
inline std::vector<Set> walls(const Metric& d) {
  std::size_t n = d.size();
  std::vector<Set> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (mask & 1) continue;
    Set up(n), low(n);
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? up : low)[i] = true;
    if (convex(d, up) && convex(d, low)) out.push_back(up);
  }
  return out;
}

inline Set complement(const Set& s) {
  Set out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = !s[i];
  return out;
}

inline bool meet(const Set& a, const Set& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return true;
  return false;
}

inline bool transverse(const Set& a, const Set& b) {
  Set ac = complement(a), bc = complement(b);
  return meet(a, b) && meet(a, bc) && meet(ac, b) && meet(ac, bc);
}

/// Largest subfamily with pairwise relation `ok`, by subset enumeration.
template <class Rel>
std::size_t max_family(const std::vector<Set>& sets, Rel ok) {
  std::size_t k = sets.size(), best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool good = true;
    for (std::size_t i = 0; i < k && good; ++i)
      for (std::size_t j = i + 1; j < k && good; ++j)
        if ((mask >> i & 1) && (mask >> j & 1)) good = ok(sets[i], sets[j]);
    if (good) best = size;
  }
  return best;
}

inline std::size_t rank(const Metric& d) { return max_family(walls(d), transverse); }

inline std::size_t max_disjoint(const std::vector<Set>& sets) {
  return max_family(sets, [](const Set& a, const Set& b) { return !meet(a, b); });
}

/// Every distance-preserving permutation, by enumeration of all n! orders.
inline std::vector<std::vector<std::size_t>> isometries(const Metric& d) {
  std::vector<std::size_t> p(d.size());
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    bool iso = true;
    for (std::size_t i = 0; i < d.size() && iso; ++i)
      for (std::size_t j = i + 1; j < d.size() && iso; ++j) iso = d(p[i], p[j]) == d(i, j);
    if (iso) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// sup over x in h ∩ a of d(x, complement of h).
inline Rational depth(const Metric& d, const Set& h, const Set& a) {
  Rational best(0);
  Set hc = complement(h);
  for (std::size_t x = 0; x < d.size(); ++x)
    if (h[x] && a[x]) best = median::max(best, dist_to(d, x, hc));
  return best;
}

inline Rational hausdorff(const Metric& d, const Set& a, const Set& b) {
  Rational worst(0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (a[x]) worst = median::max(worst, dist_to(d, x, b));
    if (b[x]) worst = median::max(worst, dist_to(d, x, a));
  }
  return worst;
}

inline Set to_set(const median::PointSet& p, std::size_t n) {
  Set out(n);
  p.for_each([&](median::PointId i) { out[i] = true; });
  return out;
}

inline std::size_t count(const Set& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

}  // namespace oracle

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <stdexcept>

#include "median/halfspaces.hpp"
#include "median/report.hpp"

namespace testing {

inline median::PointSet named(const median::MedianSpace& s, std::initializer_list<const char*> names) {
  median::PointSet p(s.size());
  for (const char* n : names) p.set(s.at(n));
  return p;
}

/// The halfspace whose members are exactly `members`.
inline median::Halfspace side(const median::MedianSpace& s, const median::PointSet& members) {
  for (median::Halfspace h : median::all_halfspaces(s))
    if (s.members(h) == members) return h;
  throw std::invalid_argument("not a halfspace");
}

inline median::Halfspace side(const median::MedianSpace& s, std::initializer_list<const char*> names) {
  return side(s, named(s, names));
}

}  // namespace testing

namespace testing {

/// Points (x,y) of grid(k) satisfying pred; grid(k) stores (x,y) at x*(k+1)+y.
template <class Pred>
median::PointSet cells(const median::MedianSpace& s, std::size_t k, Pred pred) {
  median::PointSet p(s.size());
  for (median::PointId id = 0; id < s.size(); ++id)
    if (pred(id / (k + 1), id % (k + 1))) p.set(id);
  return p;
}

template <class F>
std::optional<median::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const median::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing

namespace testing {

/// Value recorded under `key` by the first check whose name contains `check`.
inline std::string number(const median::Report& r, std::string_view check, std::string_view key) {
  for (const median::Check& c : r.checks)
    if (c.name.find(check) != std::string::npos)
      for (const auto& [k, v] : c.numbers)
        if (k == key) return v;
  throw std::invalid_argument("no such number");
}

inline const median::Check& check_named(const median::Report& r, std::string_view check) {
  for (const median::Check& c : r.checks)
    if (c.name.find(check) != std::string::npos) return c;
  throw std::invalid_argument("no such check");
}

}  // namespace testing

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "median/rational.hpp"

namespace median {

struct Check {
  std::string name;
  std::string anchor;  // formula the check exercises
  bool pass = true;
  std::vector<std::string> witness;
  std::vector<std::pair<std::string, std::string>> numbers;
  std::string note;

  Check& number(std::string key, const Rational& value) {
    numbers.emplace_back(std::move(key), value.str());
    return *this;
  }
  Check& number(std::string key, std::size_t value) {
    numbers.emplace_back(std::move(key), std::to_string(value));
    return *this;
  }
};

struct Report {
  std::string command;
  std::string inputs_digest;
  std::vector<Check> checks;

  bool passed() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int exit_status() const { return passed() ? 0 : 1; }

  Check& add(std::string name, std::string anchor, bool pass) {
    checks.push_back(Check{std::move(name), std::move(anchor), pass, {}, {}, {}});
    return checks.back();
  }
  /// Appends another report's checks, prefixing their names.
  void merge(const Report& other, const std::string& prefix) {
    for (Check c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }
};

/// Canonical JSON text (sorted keys, two-space indent, trailing newline).
std::string to_json(const Report& r);
/// One line per check.
std::string to_text(const Report& r);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace median

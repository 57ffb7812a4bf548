#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace median {

enum class ErrorKind {
  NonMedian,
  Disconnected,
  NonPositiveWeight,
  InconsistentWeights,
  NonGeodesicEdge,
  IncompleteTable,
  EmptyIntersection,
  NotDisjoint,
  PrecondViolated,
  NotStronglySeparated,
  NotInHull,
  IntersectionNotSingleton,
  NoFamilyFound,
  TooLargeForBruteForce,
  BadParams,
  ParseError,
  NotConvex,
  EmptySet,
};

std::string_view to_string(ErrorKind kind);

/// Domain error. The witness holds point or element names that exhibit the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::ParseError,
              message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Internal consistency check. A failure means a bug or a false invariant, never bad input.
inline void ensure(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("invariant violated: ") + what);
}

}  // namespace median

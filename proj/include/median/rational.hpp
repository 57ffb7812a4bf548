#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace median {

__extension__ typedef __int128 int128_t;

/// Exact rational number in canonical form (gcd(|num|, den) = 1, den > 0).
///
/// Values whose numerator and denominator fit in 64 bits are stored inline and
/// combined with 128-bit intermediates; anything larger is promoted to a GMP
/// rational and demoted again as soon as it fits.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "n", "-n", "n/d". Throws std::invalid_argument on malformed text or
  /// a zero denominator.
  static Rational parse(std::string_view text);

  /// Canonical text: "n" for integers, "n/d" otherwise.
  std::string str() const;

  bool is_zero() const { return !big_ && num_ == 0; }
  int sign() const;
  bool is_integer() const;

  /// Numerator / denominator as decimal strings (always exact).
  std::string numerator_str() const;
  std::string denominator_str() const;

  double to_double() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static Rational from_wide(int128_t num, int128_t den);
  static Rational from_mpq(mpq_class value);
  mpq_class to_mpq() const;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  // Set only when the value does not fit the inline representation.
  std::shared_ptr<const mpq_class> big_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace median

#include "median/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace median {
namespace {

__extension__ typedef unsigned __int128 u128;

u128 magnitude(int128_t v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr int128_t kMax64 = std::numeric_limits<std::int64_t>::max();

bool fits(int128_t v) { return v <= kMax64 && v >= -kMax64; }

mpz_class to_mpz(int128_t v) {
  u128 m = magnitude(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (v < 0) out = -out;
  return out;
}

bool mpz_fits64(const mpz_class& z) {
  // Symmetric range keeps negation inside int64.
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(int128_t num, int128_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(magnitude(num), magnitude(den));
  if (g > 1) {
    num /= static_cast<int128_t>(g);
    den /= static_cast<int128_t>(g);
  }
  if (fits(num) && fits(den)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_mpq(mpq_class value) {
  value.canonicalize();
  Rational r;
  if (mpz_fits64(value.get_num()) && mpz_fits64(value.get_den())) {
    r.num_ = value.get_num().get_si();
    r.den_ = value.get_den().get_si();
    return r;
  }
  r.big_ = std::make_shared<const mpq_class>(std::move(value));
  return r;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
  return q;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  std::string_view num_text = trim(text.substr(0, slash));
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid_int(num_text, true) || !valid_int(den_text, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num_text.front() == '+') num_text.remove_prefix(1);
  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (den == 0) throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
  return from_mpq(mpq_class(num, den));
}

std::string Rational::str() const {
  if (big_) {
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::numerator_str() const { return big_ ? big_->get_num().get_str() : std::to_string(num_); }
std::string Rational::denominator_str() const { return big_ ? big_->get_den().get_str() : std::to_string(den_); }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

double Rational::to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

Rational Rational::operator-() const {
  if (big_) return from_mpq(-*big_);
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      *this = from_wide(static_cast<int128_t>(num_) + rhs.num_, den_);
    } else {
      *this = from_wide(static_cast<int128_t>(num_) * rhs.den_ + static_cast<int128_t>(rhs.num_) * den_,
                        static_cast<int128_t>(den_) * rhs.den_);
    }
    return *this;
  }
  *this = from_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    *this = from_wide(static_cast<int128_t>(num_) * rhs.num_, static_cast<int128_t>(den_) * rhs.den_);
    return *this;
  }
  *this = from_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  if (!big_ && !rhs.big_) {
    *this = from_wide(static_cast<int128_t>(num_) * rhs.den_, static_cast<int128_t>(den_) * rhs.num_);
    return *this;
  }
  *this = from_mpq(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;  // canonical forms differ
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    int128_t lhs = static_cast<int128_t>(a.num_) * b.den_;
    int128_t rhs = static_cast<int128_t>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace median

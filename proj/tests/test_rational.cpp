#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

#include "median/rational.hpp"

using median::Rational;

TEST_CASE("parse and canonical text") {
  CHECK(Rational::parse("2/4").str() == "1/2");
  CHECK(Rational::parse("-6/3").str() == "-2");
  CHECK(Rational::parse(" 7 ").str() == "7");
  CHECK(Rational::parse("+3/9") == Rational(1, 3));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 5).str() == "0");
  for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.5", "1/-2", "--1"})
    CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic and ordering") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(b < a);
  CHECK(-a < b);
  CHECK(median::abs(-a) == a);
  CHECK(median::min(a, b) == b);
  CHECK(median::max(a, b) == a);
  CHECK(Rational(5).is_integer());
  CHECK_FALSE(a.is_integer());
  CHECK(a.sign() == 1);
  CHECK((-a).sign() == -1);
  CHECK(Rational(0).is_zero());
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  std::ostringstream os;
  os << Rational(-7, 21);
  CHECK(os.str() == "-1/3");
}

TEST_CASE("values beyond 64 bits promote and demote") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  Rational x(big);
  Rational sq = x * x;
  CHECK(sq.str() == "85070591730234615847396907784232501249");
  CHECK(sq / x == x);
  Rational tiny(1, big);
  CHECK((tiny * tiny).denominator_str() == "85070591730234615847396907784232501249");
  CHECK(tiny * tiny * x * x == Rational(1));
  CHECK(sq > x);
  CHECK(-sq < -x);
  CHECK(Rational::parse("123456789012345678901234567890/10").str() == "12345678901234567890123456789");
  Rational min64 = Rational(std::numeric_limits<std::int64_t>::min() + 1) - Rational(1);
  CHECK(min64.str() == "-9223372036854775808");
  CHECK(min64 + Rational(1) == Rational(std::numeric_limits<std::int64_t>::min() + 1));
}

TEST_CASE("field identities against GMP on random operands") {
  std::mt19937_64 rng(7);
  auto pick = [&] {
    std::int64_t num = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    std::int64_t den = static_cast<std::int64_t>(rng() % 1000) + 1;
    if (rng() % 4 == 0) num *= 4000000000LL;
    return std::pair{Rational(num, den), mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)))};
  };
  auto text = [](mpq_class q) {
    q.canonicalize();
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
  };
  for (int i = 0; i < 2000; ++i) {
    auto [a, qa] = pick();
    auto [b, qb] = pick();
    CHECK((a + b).str() == text(qa + qb));
    CHECK((a - b).str() == text(qa - qb));
    CHECK((a * b).str() == text(qa * qb));
    if (!b.is_zero()) CHECK((a / b).str() == text(qa / qb));
    CHECK(((a < b) == (qa < qb)));
    CHECK((a + b) - b == a);
  }
}

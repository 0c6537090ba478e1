#include "doctest.h"

#include <random>

#include "nbr/errors.hpp"
#include "nbr/rational.hpp"

using nbr::InputError;
using nbr::Rational;

TEST_CASE("canonical form") {
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(-6, 4).str() == "-3/2");
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(8, 4).str() == "2");
  CHECK(Rational(8, 4).is_integer());
  CHECK(Rational(6, 4).denominator() == 2);
  CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("parse") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("123456789012345678901234567890/3").str() ==
        "41152263004115226300411522630");
  for (const char* bad : {"", "x", "1/0", "1/-2", "1/", "/2", "1.5", "1 / 2",
                          "--1", "1/+2", " 1"}) {
    CHECK_THROWS_AS(Rational::parse(bad), InputError);
  }
}

TEST_CASE("arithmetic is exact") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(-Rational(2, 3) == Rational(-2, 3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), InputError);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK((Rational(1, 2) <=> Rational(2, 4)) == std::strong_ordering::equal);
}

TEST_CASE("render and parse round-trip") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000000);
  for (int k = 0; k < 2000; ++k) {
    const Rational q(num(rng), den(rng));
    CHECK(Rational::parse(q.str()) == q);
    CHECK(Rational::parse(q.str()).str() == q.str());
  }
}

TEST_CASE("large values stay exact") {
  Rational big(INT64_MAX);
  big *= Rational(INT64_MAX);
  big /= Rational(INT64_MAX);
  CHECK(big == Rational(INT64_MAX));
  CHECK(Rational(INT64_MIN).str() == "-9223372036854775808");
}

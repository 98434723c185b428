#include <doctest.h>

#include <random>

#include "enccdv/rational.hpp"

using namespace enccdv;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1) / Rational(3) == Rational(1, 3));
  CHECK(Rational(7, 3) - Rational(1, 3) == Rational(2));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("floor, ceil and fractional part") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(frac(Rational(7, 2)) == Rational(1, 2));
  CHECK(frac(Rational(-7, 2)) == Rational(1, 2));
  CHECK(frac(Rational(3)) == Rational(0));
}

TEST_CASE("string round trip") {
  CHECK(to_string(Rational(3, 7)) == "3/7");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(to_string(Rational(-2, 3)) == "-2/3");
  CHECK(parse_rational("3/7") == Rational(3, 7));
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("fractional part identity {x} + {-x} is 0 or 1") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    long long den = std::uniform_int_distribution<long long>(1, 40)(rng);
    long long num = std::uniform_int_distribution<long long>(-200, 200)(rng);
    Rational x(num, den);
    Rational s = frac(x) + frac(-x);
    CHECK((s == Rational(0) || s == Rational(1)));
    CHECK((s == Rational(0)) == x.is_integer());
  }
}

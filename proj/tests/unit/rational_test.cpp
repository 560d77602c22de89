#include "resdist/rational.hpp"

#include <random>

#include "doctest.h"

using namespace resdist;

TEST_CASE("rationals are canonical") {
  Rational r(Int(4), Int(-6));
  CHECK(r.numerator() == -2);
  CHECK(r.denominator() == 3);
  CHECK(Rational(Int(0), Int(7)) == Rational(0));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(-4).str() == "-4");
}

TEST_CASE("division by zero is an error") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK_THROWS_AS(Rational(Int(1), Int(0)), Error);
  CHECK_THROWS_AS(floor_div(Int(3), Int(0)), Error);
}

TEST_CASE("exact field laws on random values") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-50, 50);
  std::uniform_int_distribution<int> pos(1, 30);
  for (int i = 0; i < 200; ++i) {
    Rational a(d(rng), pos(rng)), b(d(rng), pos(rng)), c(d(rng), pos(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    if (b != Rational(0)) CHECK(a / b * b == a);
  }
}

TEST_CASE("floor division truncates toward negative infinity") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(-7, -2) == 3);
  CHECK(floor_mod(-7, 2) == 1);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
}

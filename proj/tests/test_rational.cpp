#include <catch2/catch_amalgamated.hpp>

#include "cde/rational.hpp"

using cde::ceil_div;
using cde::Rational;

TEST_CASE("ceil_div rounds up nonnegative quotients", "[rational]") {
  CHECK(ceil_div(0, 3) == 0);
  CHECK(ceil_div(1, 3) == 1);
  CHECK(ceil_div(3, 3) == 1);
  CHECK(ceil_div(4, 3) == 2);
  CHECK(ceil_div(7, 2) == 4);
}

TEST_CASE("rationals reduce and normalize signs", "[rational]") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(5).is_integer());
  CHECK_FALSE(Rational(5, 3).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact", "[rational]") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(7, 2) - Rational(1, 2) == Rational(3));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(7, 2) > Rational(3));
  CHECK(Rational(4, 2) == Rational(2));

  // sums of random small fractions survive a round trip through subtraction
  for (int a = -6; a <= 6; ++a) {
    for (int b = 1; b <= 5; ++b) {
      const Rational x(a, b);
      CHECK((x + Rational(7, 3)) - Rational(7, 3) == x);
    }
  }
}

TEST_CASE("rational ceil", "[rational]") {
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(3).ceil() == 3);
  CHECK(Rational(0).ceil() == 0);
  CHECK(Rational(1, 3).ceil() == 1);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(-4, 2).ceil() == -2);
}

TEST_CASE("rational formatting", "[rational]") {
  CHECK(Rational(7, 2).to_string() == "7/2");
  CHECK(Rational(4).to_string() == "4");
  CHECK(Rational(-3, 6).to_string() == "-1/2");
}

TEST_CASE("rational parsing accepts integers and p/q only", "[rational]") {
  CHECK(Rational::parse("4") == Rational(4));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("7/2") == Rational(7, 2));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("-"));
  CHECK_FALSE(Rational::parse("3.5"));
  CHECK_FALSE(Rational::parse("a"));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse("1/-2"));
  CHECK_FALSE(Rational::parse("1/2/3"));
  CHECK_FALSE(Rational::parse("1 /2"));
}

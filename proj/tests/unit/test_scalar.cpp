#include <doctest.h>

#include "halfgasket/errors.hpp"
#include "halfgasket/scalar.hpp"

using namespace halfgasket;

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("3e-4") == Rational(3, 10000));
  CHECK(Rational::parse("2.5E2") == Rational(250));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("12/-8") == Rational(-3, 2));
  CHECK(Rational::parse(" 1 ") == Rational(1));
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "--1", "1e", "1/2/3", "0x10", "  "})
    CHECK_THROWS_AS(Rational::parse(bad), validation_error);
  CHECK_THROWS_AS(Rational::parse("1e99999"), validation_error);
}

TEST_CASE("rational formatting round-trips") {
  for (const char* s : {"0", "1", "-1/3", "355/113", "-98765432109876543210/7"}) CHECK(Rational::parse(s).str() == s);
  CHECK(format(Rational(4, 6)) == "2/3");
  CHECK(format(0.1) == "0.1");
  CHECK(format(1.0 / 3.0) == "0.3333333333333333");
  CHECK(parse_scalar<double>("1/4") == 0.25);
}

TEST_CASE("from_double is exact") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-3.0) == Rational(-3));
  const double x = 0.1;
  CHECK(Rational::from_double(x).to_double() == x);
  CHECK(Rational::from_double(x) != Rational(1, 10));
}

TEST_CASE("integer powers") {
  CHECK(ipow(Rational(3, 5), 3) == Rational(27, 125));
  CHECK(ipow(Rational(3, 5), -2) == Rational(25, 9));
  CHECK(ipow(Rational(7), 0) == Rational(1));
}

TEST_CASE("level cap") {
  CHECK(max_level() >= 0);
  CHECK_NOTHROW(check_level(max_level(), "t"));
  CHECK_THROWS_AS(check_level(max_level() + 1, "t"), resource_limit_error);
  CHECK_THROWS_AS(check_level(-1, "t"), validation_error);
}

#include <doctest.h>

#include "owcpon/error.hpp"
#include "owcpon/rational.hpp"

using namespace owcpon;

TEST_CASE("parse_rational accepts integers, decimals and fractions") {
  CHECK(*parse_rational("12") == 12);
  CHECK(*parse_rational("2.5") == Rational(5, 2));
  CHECK(*parse_rational("-0.125") == Rational(-1, 8));
  CHECK(*parse_rational("+7/3") == Rational(7, 3));
  CHECK(*parse_rational("6/4") == Rational(3, 2));
}

TEST_CASE("parse_rational rejects malformed input") {
  for (const char* bad : {"", "-", "1.", ".5", "1/0", "1/", "/2", "1e3", "0x10", "1.2.3", " 1"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_rational(bad).has_value());
  }
}

TEST_CASE("format_rational is lowest terms") {
  CHECK(format_rational(Rational(4, 8)) == "1/2");
  CHECK(format_rational(Rational(-9, 3)) == "-3");
  CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("format_decimal rounds half away from zero") {
  CHECK(format_decimal(Rational(2145, 4672) * 100, 1) == "45.9");
  CHECK(format_decimal(Rational(1, 8), 2) == "0.13");
  CHECK(format_decimal(Rational(-1, 8), 2) == "-0.13");
  CHECK(format_decimal(Rational(1, 3), 0) == "0");
  CHECK(format_decimal(Rational(1, 2), 0) == "1");
  CHECK(format_decimal(Rational(-1, 1000), 1) == "0.0");
  CHECK(format_decimal(Rational(7), 3) == "7.000");
}

TEST_CASE("watt decimals convert exactly to milliwatts") {
  CHECK(*parse_watts("0.4") == 400);
  CHECK(*parse_watts("660") == 660000);
  CHECK(*parse_watts("0.001") == 1);
  CHECK(*parse_watts("12.34") == 12340);
  CHECK_FALSE(parse_watts("-1").has_value());
  CHECK_FALSE(parse_watts("0.0001").has_value());
  CHECK_FALSE(parse_watts("1.").has_value());
  CHECK_FALSE(parse_watts("abc").has_value());

  CHECK(format_watts(400) == "0.4");
  CHECK(format_watts(9344000) == "9344");
  CHECK(format_watts(12340) == "12.34");
  CHECK(format_watts(-1500) == "-1.5");
}

TEST_CASE("errors carry their code") {
  Error e(ErrorCode::NoRoute, "x");
  CHECK(e.code() == ErrorCode::NoRoute);
  CHECK(std::string(e.what()) == "NoRoute: x");
  CHECK(e.message() == "x");
  ParseError p(ErrorCode::UnknownKey, 3, 7, "bad");
  CHECK(p.line() == 3);
  CHECK(p.column() == 7);
  CHECK(p.code() == ErrorCode::UnknownKey);
}

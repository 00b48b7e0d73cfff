#include <doctest.h>

#include "laminal/error.hpp"
#include "laminal/rational.hpp"

using laminal::Error;
using laminal::ErrorCode;
using laminal::Rational;

TEST_CASE("parse and print in lowest terms") {
  CHECK(Rational::parse("2/14").str() == "1/7");
  CHECK(Rational::parse("-3/6").str() == "-1/2");
  CHECK(Rational::parse("5").str() == "5");
  CHECK(Rational::parse("4/2").str() == "2");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("malformed text is a parse error") {
  for (const char* bad : {"", "1/", "/2", "a/b", "1.5", "1/0", "1//2", "1/2x"}) {
    CAPTURE(bad);
    try {
      (void)Rational::parse(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}

TEST_CASE("field arithmetic is exact") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS((void)(a / Rational(0)), std::domain_error);
  // 1/3 summed three times is exactly one.
  CHECK(a + a + a == Rational(1));
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, 7) >= Rational(6, 14));
}

TEST_CASE("decimal rendering uses 20 significant digits, half-even") {
  CHECK(Rational(1, 3).decimal() == "0.33333333333333333333");
  CHECK(Rational(2, 3).decimal() == "0.66666666666666666667");
  CHECK(Rational(1).decimal() == "1.0000000000000000000");
  CHECK(Rational(1916, 2015).decimal() == "0.95086848635235732010");
  CHECK(Rational(434, 335).decimal() == "1.2955223880597014925");
  // Exact ties go to the even digit.
  CHECK(Rational(25, 100).decimal(1) == "0.2");
  CHECK(Rational(35, 100).decimal(1) == "0.4");
  CHECK(Rational(-1, 8).decimal(2) == "-0.12");
}

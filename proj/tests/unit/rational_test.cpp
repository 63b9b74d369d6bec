#include "doctest.h"

#include "confound/error.hpp"
#include "confound/rational.hpp"
#include "support/fixtures.hpp"

using namespace confound;

TEST_CASE("parse_rational") {
  CHECK(parse_rational("1/5") == testing::q(1, 5));
  CHECK(parse_rational(" 2/4 ") == testing::q(1, 2));
  CHECK(parse_rational("0.25") == testing::q(1, 4));
  CHECK(parse_rational(".5") == testing::q(1, 2));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-0.125") == testing::q(-1, 8));
  for (const char* bad : {"", "1/0", "abc", "1e-3", "1/", "/2", ".", "1.2.3", "nan"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("decimal display") {
  CHECK(to_decimal(testing::q(4, 15)) == "0.266");
  CHECK(to_decimal(testing::q(4, 15), 3, Rounding::HalfEven) == "0.267");
  CHECK(to_decimal(testing::q(1, 4)) == "0.250");
  CHECK(to_decimal(testing::q(1, 4), 1, Rounding::HalfEven) == "0.2");
  CHECK(to_decimal(testing::q(3, 4), 1, Rounding::HalfEven) == "0.8");
  CHECK(to_decimal(testing::q(-1, 3)) == "-0.333");
  CHECK(to_decimal(Rational(0)) == "0.000");
  CHECK(to_exact_string(testing::q(2, 4)) == "1/2");
  CHECK(to_exact_string(Rational(3)) == "3");
}

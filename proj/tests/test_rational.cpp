#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spikit/json_io.hpp"
#include "spikit/rational.hpp"

using namespace spikit;

TEST_CASE("rational literals parse exactly") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("3.2") == Rational(16, 5));
  CHECK(parse_rational("-0.04") == Rational(-1, 25));
  CHECK(parse_rational("25e-1") == Rational(5, 2));
  CHECK(parse_rational("1.5e2") == Rational(150));
  CHECK(parse_rational("0.5") == Rational(1, 2));
}

TEST_CASE("bad literals are rejected") {
  CHECK_THROWS_AS(parse_rational(""), parse_error);
  CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
  CHECK_THROWS_AS(parse_rational("1/-2"), parse_error);
  CHECK_THROWS_AS(parse_rational("abc"), parse_error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), parse_error);
}

TEST_CASE("formatting is lowest-terms and round-trips") {
  CHECK(rational_to_string(Rational(16, 5)) == "16/5");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK(rational_to_string(make_rational(-6, 4)) == "-3/2");

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    long a = static_cast<long>(rng() % 2001) - 1000;
    long b = static_cast<long>(rng() % 999) + 1;
    Rational r(a, b);
    r.canonicalize();
    Rational back = parse_rational(rational_to_string(r));
    CHECK(back == r);
    // exactness of addition in lowest terms
    Rational s = r + Rational(1, 3);
    CHECK(parse_rational(rational_to_string(s)) == s);
  }
}

TEST_CASE("json rational round-trip is bit-exact") {
  for (const char* lit : {"16/5", "-3/2", "0", "123456789123456789123456789/2", "7"}) {
    Rational r = parse_rational(lit);
    CHECK(rational_from_json(rational_to_json(r)) == r);
  }
  // floats in input JSON convert via their shortest decimal form
  json j = parse_json_text("[3.2, 0.25, -1.5]");
  CHECK(rational_from_json(j[0]) == Rational(16, 5));
  CHECK(rational_from_json(j[1]) == Rational(1, 4));
  CHECK(rational_from_json(j[2]) == Rational(-3, 2));
}

#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace testing;

TEST_CASE("parse_rational reads fractions and decimals exactly") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(parse_rational("-3.5e-2") == q(-7, 200));
  CHECK(parse_rational(" 42 ") == q(42));
  CHECK(parse_rational("1e3") == q(1000));
  CHECK(parse_rational("0.1") == q(1, 10));
  CHECK(parse_rational(".5") == q(1, 2));
  CHECK(parse_rational("+2/4") == q(1, 2));
}

TEST_CASE("parse_rational rejects junk") {
  for (const char* bad : {"", "abc", "1/0", "1..2", "1e", "--1", "1/2/3x", "0x10"})
    CHECK_THROWS_AS(parse_rational(bad), InputError);
}

TEST_CASE("to_string prints lowest terms") {
  CHECK(to_string(q(2, 4)) == "1/2");
  CHECK(to_string(q(3)) == "3");
  CHECK(to_string(q(-6, 4)) == "-3/2");
  CHECK(to_string(q(0)) == "0");
}

TEST_CASE("from_double is exact") {
  // 0.1 as a double is 3602879701896397 / 2^55.
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, 55);
  CHECK(from_double(0.1) == Rational(mpz_class("3602879701896397"), den));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 500; ++i) {
    const double d = u(rng);
    CHECK(from_double(d).get_d() == d);
  }
  CHECK_THROWS_AS(from_double(std::numeric_limits<double>::infinity()), InputError);
}

TEST_CASE("float comparisons honour the tolerance, exact ones ignore it") {
  CHECK(ScalarOps<double>::le(1.0 + 1e-12, 1.0, 1e-9));
  CHECK_FALSE(ScalarOps<double>::le(1.0 + 1e-6, 1.0, 1e-9));
  CHECK_FALSE(ScalarOps<Rational>::le(q(1) + q(1, 1000000000000), q(1), 1.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "soficlab/rational.hpp"

using soficlab::Rational;

TEST_CASE("construction reduces and normalizes sign") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), soficlab::DomainError);
}

TEST_CASE("arithmetic") {
    Rational a(1, 6), b(1, 10);
    CHECK(a + b == Rational(4, 15));
    CHECK(a - b == Rational(1, 15));
    CHECK(a * b == Rational(1, 60));
    CHECK(a / b == Rational(5, 3));
    CHECK((-a).num() == -1);
    CHECK(abs(Rational(-3, 4)) == Rational(3, 4));
    CHECK_THROWS_AS(a / Rational(0), soficlab::DomainError);
}

TEST_CASE("comparison is exact") {
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(-1, 2) < Rational(0));
    // values float would conflate
    CHECK(Rational(1, 10000000) > Rational(0));
}

TEST_CASE("to_string always emits p/q") {
    CHECK(Rational(0).to_string() == "0/1");
    CHECK(Rational(3, 4).to_string() == "3/4");
    CHECK(Rational(-1, 2).to_string() == "-1/2");
    CHECK(Rational(7).to_string() == "7/1");
}

TEST_CASE("parse") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK_THROWS_AS(Rational::parse("x/y"), soficlab::DomainError);
    CHECK_THROWS_AS(Rational::parse(""), soficlab::DomainError);
    CHECK_THROWS_AS(Rational::parse("1/0"), soficlab::DomainError);
}

TEST_CASE("overflow is detected, not wrapped") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * Rational(4), soficlab::OverflowError);
    CHECK_NOTHROW(big + big);  // exactly INT64_MAX - 1
}

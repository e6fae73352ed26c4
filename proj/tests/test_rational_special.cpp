#include "mbl/errors.hpp"
#include "mbl/rational.hpp"
#include "mbl/special.hpp"

#include <doctest.h>

#include <cmath>

using namespace mbl;

TEST_CASE("digamma matches the central difference of std::lgamma") {
  const double h = 1e-4;
  for (double x = 0.5; x <= 20.0; x += 0.25) {
    const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2 * h);
    CHECK(std::abs(digamma(x) - fd) < 1e-6);
  }
}

TEST_CASE("digamma closed forms") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2 * std::log(2.0)).epsilon(1e-13));
  double harmonic = 0.0;
  for (int n = 1; n <= 30; ++n) {
    CHECK(std::abs(digamma(n) - (-kEulerGamma + harmonic)) < 1e-12);
    harmonic += 1.0 / n;
  }
  // Small arguments: psi(x) = psi(x + 1) - 1/x with psi(1 + x) near -gamma.
  CHECK(std::abs(digamma(1e-3) - (digamma(1.001) - 1000.0)) < 1e-9);
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-1.5), DomainError);
}

TEST_CASE("log_gamma agrees with std::lgamma") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 25.5, 100.0, 170.0}) {
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(kPi)) < 1e-14);
}

TEST_CASE("rational determinant and inverse") {
  RationalMatrix m(3, 3);
  const int v[9] = {2, -1, 0, -1, 2, -1, 0, -1, 2};
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = Rational(v[i]);
  CHECK(determinant(m) == Rational(4));
  const RationalMatrix inv = inverse(m);
  // Inverse of the A3 Cartan matrix is (1/4) [[3,2,1],[2,4,2],[1,2,3]].
  CHECK(inv(0, 0) == Rational(3, 4));
  CHECK(inv(1, 1) == Rational(1));
  CHECK(inv(0, 2) == Rational(1, 4));
  RationalMatrix s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  CHECK(determinant(s) == 0);
  CHECK_THROWS_AS(inverse(s), DomainError);
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("-7/4") == Rational(-7, 4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("12") == Rational(12));
  CHECK(is_integer(parse_rational("8/4")));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("exact_root") {
  CHECK(exact_root(Integer(1024), 5) == 4);
  CHECK(exact_root(Integer(-27), 3) == 3);
  CHECK_THROWS_AS(exact_root(Integer(10), 2), DomainError);
}

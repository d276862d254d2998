#include <doctest.h>

#include <cmath>
#include <limits>

#include "l1sec/errors.hpp"
#include "l1sec/special_functions.hpp"
#include "oracles.hpp"

using namespace l1sec;

TEST_CASE("erf at the origin and odd symmetry") {
  CHECK(l1sec::erf(0.0) == 0.0);
  for (double x : {0.3, 1.1, 2.7}) CHECK(l1sec::erf(x) == -l1sec::erf(-x));
}

TEST_CASE("erf(1) matches the series oracle") {
  const double ref = double(oracle::erf(1.0L));
  CHECK(std::fabs(ref - 0.8427007929497149) < 1e-16);
  CHECK(std::fabs(l1sec::erf(1.0) - ref) <= 1e-15);
}

TEST_CASE("erf and erfc track the oracle on a grid") {
  for (double x = -6.0; x <= 6.0; x += 0.0625) {
    CHECK(std::fabs(l1sec::erf(x) - double(oracle::erf(x))) <= 2e-15);
  }
  for (double x = 0.5; x <= 12.0; x += 0.25) {
    const double ref = double(oracle::erfc(x));
    CHECK(std::fabs(l1sec::erfc(x) - ref) <= 1e-13 * ref);
  }
}

TEST_CASE("erf is strictly increasing on a dense grid") {
  double prev = l1sec::erf(-5.0);
  for (double x = -5.0 + 1e-3; x <= 5.0; x += 1e-3) {
    const double v = l1sec::erf(x);
    if (std::fabs(x) < 5.5) CHECK(v >= prev);
    if (std::fabs(x) < 4.0) CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("erf rejects non-finite input") {
  CHECK_THROWS_AS(l1sec::erf(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(l1sec::erf(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(l1sec::erfc(-std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("erfinv basics") {
  CHECK(erfinv(0.0) == 0.0);
  const double ref = double(oracle::erfinv(0.5L));
  CHECK(std::fabs(ref - 0.4769362762044699) < 1e-15);
  CHECK(std::fabs(erfinv(0.5) - ref) <= 1e-15);
}

TEST_CASE("erfinv roundtrips") {
  for (double x : {0.1, 0.5, 1.5, 3.0}) CHECK(std::fabs(erfinv(l1sec::erf(x)) - x) <= 1e-10);
  double worst = 0.0;
  for (double p = -0.9999; p < 0.9999; p += 1e-4) {
    worst = std::max(worst, std::fabs(l1sec::erf(erfinv(p)) - p));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("erfinv relative accuracy against the bisection oracle") {
  for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.8, 0.95, 0.999, 0.999999, 1.0 - 1e-12}) {
    const double ref = double(oracle::erfinv(p));
    CHECK(std::fabs(erfinv(p) - ref) <= 1e-12 * std::fabs(ref));
  }
}

TEST_CASE("erfinv is odd by construction") {
  for (double p = -0.999; p <= 0.999; p += 0.0137) CHECK(erfinv(-p) == -erfinv(p));
}

TEST_CASE("erfinv domain") {
  CHECK_THROWS_AS(erfinv(1.0), DomainError);
  CHECK_THROWS_AS(erfinv(-1.0), DomainError);
  CHECK_THROWS_AS(erfinv(1.5), DomainError);
  CHECK_THROWS_AS(erfinv(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK(std::isfinite(erfinv(1.0 - 1e-12)));
}

TEST_CASE("Probability range") {
  CHECK(Probability(0.25).value() == 0.25);
  CHECK_NOTHROW(Probability(0.0));
  CHECK_NOTHROW(Probability(1.0));
  CHECK_THROWS_AS(Probability(-1e-9), DomainError);
  CHECK_THROWS_AS(Probability(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("gaussian_pdf") {
  CHECK(gaussian_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(gaussian_pdf(1.3) == gaussian_pdf(-1.3));
}

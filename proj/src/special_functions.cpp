#include "l1sec/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "l1sec/errors.hpp"

namespace l1sec {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// Giles' approximation ("Approximating the erfinv function", GPU Computing
// Gems), relative error around 1e-7 over the whole open interval.
double erfinv_seed(double x) {
  double w = -std::log((1.0 - x) * (1.0 + x));
  double p;
  if (w < 5.0) {
    w -= 2.5;
    p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
  } else {
    w = std::sqrt(w) - 3.0;
    p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
  }
  return p * x;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability outside [0, 1]: " + std::to_string(value));
  }
}

double erf(double x) {
  if (!std::isfinite(x)) throw DomainError("erf: non-finite argument");
  return std::erf(x);
}

double erfc(double x) {
  if (!std::isfinite(x)) throw DomainError("erfc: non-finite argument");
  return std::erfc(x);
}

double erfinv(double p) {
  if (!(std::abs(p) < 1.0)) {
    throw DomainError("erfinv: argument must lie in (-1, 1), got " + std::to_string(p));
  }
  if (p == 0.0) return 0.0;

  const double a = std::abs(p);
  double x = erfinv_seed(a);
  // Residual f(x) = erf(x) - a. In the upper half use (1 - a) - erfc(x):
  // 1 - a is exact there and erfc keeps full relative accuracy.
  for (int iter = 0; iter < 4; ++iter) {
    const double f = a <= 0.5 ? std::erf(x) - a : (1.0 - a) - std::erfc(x);
    const double slope = kTwoOverSqrtPi * std::exp(-x * x);
    if (f == 0.0 || slope == 0.0) break;
    const double ratio = f / slope;
    const double step = ratio / (1.0 + x * ratio);  // Halley
    x -= step;
    if (std::abs(step) <= 1e-16 * x) break;
  }
  return p < 0.0 ? -x : x;
}

double gaussian_pdf(double x) {
  return std::numbers::inv_sqrtpi * std::numbers::sqrt2 * 0.5 * std::exp(-0.5 * x * x);
}

}  // namespace l1sec

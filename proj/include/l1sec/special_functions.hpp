#pragma once

// Scalar special functions used by the threshold equations.

namespace l1sec {

// A real number in [0, 1]. Construction outside that range throws DomainError.
class Probability {
 public:
  explicit Probability(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Error function (2/sqrt(pi)) * integral_0^x exp(-t^2) dt.
/// Throws DomainError for non-finite x.
double erf(double x);

/// Complementary error function 1 - erf(x), accurate in the upper tail.
double erfc(double x);

/// Inverse of erf on (-1, 1). Throws DomainError for |p| >= 1 or NaN.
///
/// A rational seed is refined by Halley steps on erf (erfc in the tail), so
/// erf(erfinv(p)) reproduces p to a few ulps. erfinv(-p) == -erfinv(p).
double erfinv(double p);

/// Standard normal density.
double gaussian_pdf(double x);

}  // namespace l1sec

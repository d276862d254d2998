#pragma once

// Asymptotic l1 phase-transition curves in the (alpha, beta) = (m/n, k/n)
// plane: the exact weak threshold, the direct sectional lower bound and the
// Hopfield-based sectional upper bound.

#include <functional>
#include <string_view>
#include <vector>

namespace l1sec {

/// Scaled ground-state energy constant of the Sherrington-Kirkpatrick form.
inline constexpr double kXiSK = 0.7632;

enum class CurveKind { WeakExact, SectionalLower, SectionalUpper };

std::string_view curve_name(CurveKind kind);

struct ThresholdPoint {
  double alpha;
  double beta;
  CurveKind kind;
};

struct CurveSet {
  std::vector<ThresholdPoint> points;

  std::vector<ThresholdPoint> of(CurveKind kind) const;
  bool empty() const { return points.empty(); }
};

struct SectionalLowerSolve {
  double beta;
  double theta_hat;
  double alpha_bound;
  double epsilon = 0.0;
  double residual;
};

// Adjusted problem dimensions, all as ratios to n.
struct AdjustedDims {
  double xi_l;
  double kg_ratio;
  double mg_ratio;
  double ng_ratio;
  double xi_sk;
};

struct RootScanOptions {
  int scan_points = 400;
  double tol = 1e-10;  // final bracket width
};

/// Locates the unique sign change of f on [lo, hi] by a uniform scan followed
/// by bisection. Throws NumericalFailure when the scan finds no sign change or
/// more than one.
double find_unique_root(const std::function<double(double)>& f, double lo, double hi,
                        const RootScanOptions& opts = {});

/// Left-hand side of the weak-threshold equation; zero on the weak curve.
/// Requires 0 < beta < alpha < 1.
double weak_residual(double alpha, double beta);

/// Weak threshold beta_w(alpha).
double weak_beta(double alpha, double tol = 1e-10);

/// Residual of the theta equation defining the sectional lower bound, with the
/// slack constant fixed at zero. Requires 0 < beta < theta < 1.
double sec_lower_theta_residual(double theta, double beta);

/// Solves the theta equation for beta and evaluates the alpha bound at the
/// root. Throws NumericalFailure without a bracket, ConsistencyError when the
/// bound falls outside (0, 1).
SectionalLowerSolve sec_lower_solve(double beta, double tol = 1e-13);

AdjustedDims adjusted_dims(double alpha, double beta, double xi_sk = kXiSK);

/// Sectional upper-bound residual: the weak residual with alpha in the
/// denominator replaced by the adjusted m^(g)/n.
double sec_upper_residual(double alpha, double beta, double xi_sk = kXiSK);

double sec_upper_beta(double alpha, double xi_sk = kXiSK, double tol = 1e-10);

/// Inclusive arithmetic grid start:stop:step.
struct AlphaGrid {
  double start;
  double stop;
  double step;

  std::vector<double> values() const;
  /// Parses "start:stop:step"; throws UsageError when malformed.
  static AlphaGrid parse(std::string_view text);
};

struct CurveOptions {
  double xi_sk = kXiSK;
  double tol = 1e-10;
  int lower_sweep_points = 2000;
};

/// Samples all three curves on the given alphas (each within (0.02, 0.98)).
/// Lower-bound points come from a parametric sweep in beta interpolated onto
/// the alpha grid. Output is grouped by curve, then ordered by alpha.
CurveSet emit_curves(const std::vector<double>& alphas, const CurveOptions& opts = {});

}  // namespace l1sec

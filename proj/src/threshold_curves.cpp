#include "l1sec/threshold_curves.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "l1sec/errors.hpp"
#include "l1sec/special_functions.hpp"

namespace l1sec {

namespace {

constexpr double kSqrt2OverPi = std::numbers::sqrt2 * std::numbers::inv_sqrtpi;
constexpr double kSqrt2Pi = std::numbers::sqrt2 / std::numbers::inv_sqrtpi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_open_region(const char* who, double alpha, double beta) {
  if (!(beta > 0.0 && beta < alpha && alpha < 1.0)) {
    throw DomainError(std::string(who) + ": need 0 < beta < alpha < 1, got alpha=" + fmt(alpha) +
                      " beta=" + fmt(beta));
  }
}

// Shared shape of the weak and sectional-upper equations.
double weak_form(double alpha, double beta, double denominator) {
  const double q = erfinv((1.0 - alpha) / (1.0 - beta));
  return (1.0 - beta) * kSqrt2OverPi * std::exp(-q * q) / denominator - std::numbers::sqrt2 * q;
}

}  // namespace

std::string_view curve_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::WeakExact:
      return "weak";
    case CurveKind::SectionalLower:
      return "sec-lower";
    case CurveKind::SectionalUpper:
      return "sec-upper";
  }
  return "unknown";
}

std::vector<ThresholdPoint> CurveSet::of(CurveKind kind) const {
  std::vector<ThresholdPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [kind](const ThresholdPoint& p) { return p.kind == kind; });
  return out;
}

double find_unique_root(const std::function<double(double)>& f, double lo, double hi,
                        const RootScanOptions& opts) {
  if (!(lo < hi) || opts.scan_points < 2 || !(opts.tol > 0.0)) {
    throw UsageError("find_unique_root: invalid interval or options");
  }
  const int n = opts.scan_points;
  double bracket_lo = 0.0, bracket_hi = 0.0, f_lo = 0.0;
  int sign_changes = 0;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i < n; ++i) {
    const double x = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    const double fx = f(x);
    if (std::signbit(fx) != std::signbit(f_prev)) {
      ++sign_changes;
      bracket_lo = x_prev;
      bracket_hi = x;
      f_lo = f_prev;
    }
    x_prev = x;
    f_prev = fx;
  }
  if (sign_changes == 0) {
    throw NumericalFailure("no sign change on [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  if (sign_changes > 1) {
    throw NumericalFailure(std::to_string(sign_changes) + " sign changes on [" + fmt(lo) + ", " +
                           fmt(hi) + "]; root is not unique");
  }

  double a = bracket_lo, b = bracket_hi, fa = f_lo;
  while (b - a > opts.tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return std::abs(fa) <= std::abs(f(b)) ? a : b;
}

double weak_residual(double alpha, double beta) {
  require_open_region("weak_residual", alpha, beta);
  return weak_form(alpha, beta, alpha);
}

double weak_beta(double alpha, double tol) {
  if (!(alpha > 2e-6 && alpha < 1.0)) throw DomainError("weak_beta: alpha outside (0, 1)");
  return find_unique_root([alpha](double b) { return weak_residual(alpha, b); }, 1e-6,
                          alpha - 1e-6, {.tol = tol});
}

double sec_lower_theta_residual(double theta, double beta) {
  if (!(beta > 0.0 && beta < theta && theta < 1.0)) {
    throw DomainError("sec_lower_theta_residual: need 0 < beta < theta < 1");
  }
  const double q = erfinv((1.0 - theta) / (1.0 - beta));
  return (1.0 - beta) * (kSqrt2OverPi * std::exp(-q * q) - kSqrt2OverPi * beta / (1.0 - beta)) /
             theta -
         std::numbers::sqrt2 * q;
}

SectionalLowerSolve sec_lower_solve(double beta, double tol) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("sec_lower_solve: beta outside (0, 1)");
  const double theta = find_unique_root(
      [beta](double t) { return sec_lower_theta_residual(t, beta); }, beta + 1e-9, 1.0 - 1e-9,
      {.tol = tol});

  const double q = erfinv((1.0 - theta) / (1.0 - beta));
  const double gauss = std::exp(-q * q);
  const double shifted = (1.0 - beta) * kSqrt2OverPi * gauss - kSqrt2OverPi * beta;
  const double alpha_bound =
      (1.0 - beta) / kSqrt2Pi *
          (kSqrt2Pi + 2.0 * std::sqrt(2.0 * q * q) * gauss - kSqrt2Pi * (1.0 - theta) / (1.0 - beta)) +
      beta - shifted * shifted / theta;
  if (!(alpha_bound > 0.0 && alpha_bound < 1.0)) {
    throw ConsistencyError("sec_lower_solve: alpha bound " + fmt(alpha_bound) +
                           " outside (0, 1) at beta=" + fmt(beta));
  }
  return {.beta = beta,
          .theta_hat = theta,
          .alpha_bound = alpha_bound,
          .epsilon = 0.0,
          .residual = sec_lower_theta_residual(theta, beta)};
}

AdjustedDims adjusted_dims(double alpha, double beta, double xi_sk) {
  require_open_region("adjusted_dims", alpha, beta);
  if (!(xi_sk >= 0.0)) throw DomainError("adjusted_dims: xi_sk must be nonnegative");
  const double xi_l = beta * (std::sqrt((1.0 - alpha) / beta) + xi_sk);
  const double kg = xi_l * xi_l / (1.0 - alpha);
  return {.xi_l = xi_l,
          .kg_ratio = kg,
          .mg_ratio = alpha - beta + kg,
          .ng_ratio = 1.0 - beta + kg,
          .xi_sk = xi_sk};
}

double sec_upper_residual(double alpha, double beta, double xi_sk) {
  require_open_region("sec_upper_residual", alpha, beta);
  if (!(xi_sk >= 0.0)) throw DomainError("sec_upper_residual: xi_sk must be nonnegative");
  const double inflate = 1.0 + xi_sk * std::sqrt(beta / (1.0 - alpha));
  return weak_form(alpha, beta, alpha - beta + beta * inflate * inflate);
}

double sec_upper_beta(double alpha, double xi_sk, double tol) {
  if (!(alpha > 2e-6 && alpha < 1.0)) throw DomainError("sec_upper_beta: alpha outside (0, 1)");
  return find_unique_root([alpha, xi_sk](double b) { return sec_upper_residual(alpha, b, xi_sk); },
                          1e-6, alpha - 1e-6, {.tol = tol});
}

std::vector<double> AlphaGrid::values() const {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

AlphaGrid AlphaGrid::parse(std::string_view text) {
  double parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) throw UsageError("grid must look like start:stop:step");
    const std::string_view field = text.substr(pos, end - pos);
    const auto res = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      throw UsageError("malformed grid field '" + std::string(field) + "'");
    }
    pos = end + 1;
  }
  const AlphaGrid grid{parts[0], parts[1], parts[2]};
  if (!(grid.step > 0.0) || !(grid.start <= grid.stop) || !std::isfinite(grid.stop)) {
    throw UsageError("grid needs start <= stop and step > 0");
  }
  return grid;
}

CurveSet emit_curves(const std::vector<double>& alphas, const CurveOptions& opts) {
  CurveSet out;
  if (alphas.empty()) return out;
  for (double a : alphas) {
    if (!(a > 0.02 && a < 0.98)) throw UsageError("alpha " + fmt(a) + " outside (0.02, 0.98)");
  }
  if (!(opts.tol > 0.0) || !(opts.xi_sk >= 0.0) || opts.lower_sweep_points < 10) {
    throw UsageError("emit_curves: invalid options");
  }

  // Parametric sweep of the lower bound: beta -> alpha_bound(beta).
  const int half = opts.lower_sweep_points / 2;
  std::vector<double> sweep_beta;
  for (int i = 0; i < half; ++i) sweep_beta.push_back(1e-6 * std::pow(1e4, double(i) / half));
  for (int i = 0; i < half; ++i) sweep_beta.push_back(0.01 + (0.46 - 0.01) * i / (half - 1));
  std::vector<double> sweep_alpha;
  sweep_alpha.reserve(sweep_beta.size());
  for (double b : sweep_beta) sweep_alpha.push_back(sec_lower_solve(b).alpha_bound);
  for (std::size_t i = 1; i < sweep_alpha.size(); ++i) {
    if (!(sweep_alpha[i] > sweep_alpha[i - 1])) {
      throw NumericalFailure("lower-bound sweep is not monotone near beta=" + fmt(sweep_beta[i]));
    }
  }

  std::vector<ThresholdPoint> weak, lower, upper;
  for (double a : alphas) {
    try {
      weak.push_back({a, weak_beta(a, opts.tol), CurveKind::WeakExact});
      upper.push_back({a, sec_upper_beta(a, opts.xi_sk, opts.tol), CurveKind::SectionalUpper});
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("alpha=" + fmt(a) + ": " + e.what());
    }
    const auto it = std::lower_bound(sweep_alpha.begin(), sweep_alpha.end(), a);
    if (it == sweep_alpha.begin() || it == sweep_alpha.end()) {
      throw NumericalFailure("alpha=" + fmt(a) + ": outside the lower-bound sweep range");
    }
    const auto hi = static_cast<std::size_t>(it - sweep_alpha.begin());
    const std::size_t lo = hi - 1;
    const double t = (a - sweep_alpha[lo]) / (sweep_alpha[hi] - sweep_alpha[lo]);
    lower.push_back({a, sweep_beta[lo] + t * (sweep_beta[hi] - sweep_beta[lo]),
                     CurveKind::SectionalLower});
  }

  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    const bool inside = lower[i].beta > 0.0 && weak[i].beta < a && upper[i].beta < a;
    const bool ordered = lower[i].beta <= upper[i].beta + 1e-9 && upper[i].beta <= weak[i].beta + 1e-9;
    if (!inside || !ordered) {
      throw ConsistencyError("alpha=" + fmt(a) + ": curve ordering violated (lower=" +
                             fmt(lower[i].beta) + ", upper=" + fmt(upper[i].beta) +
                             ", weak=" + fmt(weak[i].beta) + ")");
    }
  }

  out.points.reserve(3 * alphas.size());
  for (auto* curve : {&weak, &lower, &upper}) {
    out.points.insert(out.points.end(), curve->begin(), curve->end());
  }
  return out;
}

}  // namespace l1sec

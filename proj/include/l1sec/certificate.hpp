#pragma once

// Failure certificates: a null-space vector whose l1 mass on the support
// block (last k coordinates) exceeds its mass off the block. Any such w
// yields a k-sparse x on that block that l1 minimization does not recover.

#include <Eigen/Dense>
#include <json.hpp>
#include <string>

#include "l1sec/dual_distance.hpp"
#include "l1sec/random_instances.hpp"
#include "l1sec/sign_pattern.hpp"

namespace l1sec {

struct Certificate {
  Eigen::VectorXd w;
  double head_l1 = 0.0;  // sum_{i <= n-k} |w_i|
  double tail_l1 = 0.0;  // sum_{i > n-k} |w_i|
  double gap = 0.0;      // tail_l1 - head_l1
  double nullspace_residual = 0.0;  // ||A w|| / ||A||_F
};

/// Computes head/tail masses and the null-space residual of w against a.
Certificate measure_certificate(const Eigen::MatrixXd& a, int k, Eigen::VectorXd w);

/// w = -Q z_star from a converged dual solve with distance above
/// `positivity_threshold`. The box-QP optimality conditions give
/// gap >= distance^2 up to solver slack. Throws CertificateRejected unless
/// gap > 0 and the null-space residual is at most 1e-8; throws UsageError when
/// the solve is unconverged or not positive.
Certificate extract_certificate(const NullProjector& projector, int k, const DualSolve& solve,
                                double positivity_threshold);

struct ConstructionReport {
  bool pass = false;
  double l1_x_plus_w = 0.0;  // ||x + w||_1
  double l1_x = 0.0;         // ||x||_1
  double residual = 0.0;     // ||A(x + w) - A x||_2
  double residual_limit = 0.0;
  std::string reason;
};

/// Builds x with x_j = 0 off the support and x_j = -w_j on it, then checks
/// ||x + w||_1 < ||x||_1 with A(x + w) = A x, i.e. x + w is a feasible point
/// of strictly smaller l1 norm.
ConstructionReport verify_theorem2_construction(const Eigen::MatrixXd& a, int k,
                                                const Certificate& cert);

/// {n, m, k, b, w, head_l1, tail_l1, gap, nullspace_residual}
nlohmann::json certificate_to_json(const ProblemShape& shape, const SignPattern& b,
                                   const Certificate& cert);

}  // namespace l1sec

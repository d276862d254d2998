#pragma once

// Sign margin of a pattern b over the support block:
//
//   rho(b) = min_y ||D_H y||_inf  s.t.  D_T y = b
//          = max { b . w_T : w in null(A), ||w_H||_1 <= 1 },
//
// where D (n x m) is an orthonormal basis of the row space, split into its
// first n-k rows D_H and last k rows D_T. rho(b) > 1 exactly when the box
// slice of `dual_distance` misses the row space, i.e. when the dual distance
// is positive; unlike the distance, rho stays informative on the recovery side.

#include <Eigen/Dense>
#include <vector>

#include "l1sec/random_instances.hpp"
#include "l1sec/sign_pattern.hpp"

namespace l1sec {

struct MarginEval {
  double value = 0.0;  // b.w_T at the LP-optimal basic w (lower bound on rho)
  double upper = 0.0;  // ||D_H y||_inf at the dual-optimal y (upper bound on rho)
  int pivots = 0;
};

// Revised primal simplex on
//   max c.(u - v)  s.t.  1.(u + v) = 1,  G^T (u - v) = 0,  u, v >= 0,
// with c = D_H y0(b) and G = D_H N, where y0 solves D_T y0 = b and N spans
// null(D_T). The feasible set does not depend on b, so successive
// evaluations warm-start from the previous optimal basis.
class SignMargin {
 public:
  /// Requires 1 <= k <= m. Throws NumericalFailure if the support rows of the
  /// row-space basis are rank deficient.
  SignMargin(const NullProjector& projector, int k);

  MarginEval evaluate(const SignPattern& b);

  int support_size() const { return k_; }

 private:
  Eigen::VectorXd column(int j) const;
  double cost(const Eigen::VectorXd& c, int j) const;
  void refactor();
  void find_initial_basis();

  int k_;
  int head_;
  int free_dims_;
  Eigen::MatrixXd tail_map_;  // head x k, c = tail_map_ * b
  Eigen::MatrixXd g_;         // head x free_dims
  std::vector<int> basis_;    // column ids; j < head is u_j, otherwise v_{j-head}
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
};

}  // namespace l1sec

#pragma once

// Exact dual of the ball-constrained sectional functional for one sign
// pattern:
//
//   tau_w(A, b) = -min ||Dperp z||_2  s.t. |z_i| <= 1 on the first n-k
//                                          coordinates, z_i = -b_i on the last k.
//
// The minimum is the Euclidean distance between that box slice and the row
// space of A.

#include <Eigen/Dense>

#include "l1sec/random_instances.hpp"
#include "l1sec/sign_pattern.hpp"

namespace l1sec {

struct DualSolveOptions {
  int max_iterations = 50000;
  double fixed_point_tol = 1e-9;  // on ||z+ - z||_inf
  double gap_tol = 1e-10;         // distance minus weak-duality lower bound
  double zero_cutoff = 0.0;       // stop once the distance drops to this level
};

struct DualSolve {
  SignPattern b;
  Eigen::VectorXd z_star;  // length n
  double distance = 0.0;   // ||Q z_star||, recomputed at return
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  bool below_cutoff = false;  // stopped by zero_cutoff; distance is an upper bound
};

/// Projected gradient with step 1/2 on ||Q z||^2, i.e. alternating projection
/// between the box slice and the row space. Each iterate also yields the
/// weak-duality bound max_{w in null(A), ||w|| <= 1} (b.w_T - ||w_H||_1) at
/// w = -Qz/||Qz||; the solve converges when the bracket closes to gap_tol or
/// iterates stall below fixed_point_tol with the bracket under 1e-6.
///
/// `warm_start` (length n) seeds the head block; the tail is always -b.
DualSolve dual_distance(const NullProjector& projector, int k, const SignPattern& b,
                        const DualSolveOptions& opts = {},
                        const Eigen::VectorXd* warm_start = nullptr);

struct PrimalOptions {
  int iterations_per_stage = 4000;
  int stages = 7;  // smoothing 1e-1, 1e-2, ...
};

/// Reference value of tau_w(A, b) from the primal side,
///   min sum_{i<=n-k} |w_i| - sum_{i>n-k} b_i w_i  over w = Dperp^T u, ||u|| <= 1,
/// by accelerated projected gradient on a Huber smoothing with continuation.
/// Returns the true objective at the best iterate, so the result is always an
/// upper bound on tau_w and never positive. Only for n <= 60.
double primal_tau_reference(const NullProjector& projector, int k, const SignPattern& b,
                            const PrimalOptions& opts = {});

}  // namespace l1sec

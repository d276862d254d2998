#include "l1sec/dual_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "l1sec/errors.hpp"

namespace l1sec {

namespace {

void check_args(const NullProjector& p, int k, const SignPattern& b) {
  const int n = p.shape.n;
  if (k < 0 || k >= n) throw UsageError("need 0 <= k < n, got k=" + std::to_string(k));
  if (b.size() != k) throw UsageError("sign pattern length differs from k");
}

// max_{w in null(A), ||w||<=1} (b.w_T - ||w_H||_1) evaluated at w = -qz/||qz||.
double weak_duality_bound(const Eigen::VectorXd& qz, double dist, int head, const SignPattern& b) {
  if (dist <= 0.0) return 0.0;
  double tail = 0.0;
  for (int i = 0; i < b.size(); ++i) tail -= b[i] * qz(head + i);
  const double head_l1 = qz.head(head).lpNorm<1>();
  return std::max(0.0, (tail - head_l1) / dist);
}

}  // namespace

DualSolve dual_distance(const NullProjector& projector, int k, const SignPattern& b,
                        const DualSolveOptions& opts, const Eigen::VectorXd* warm_start) {
  check_args(projector, k, b);
  const int n = projector.shape.n;
  const int head = n - k;

  DualSolve out;
  out.b = b;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  if (warm_start != nullptr) {
    if (warm_start->size() != n) throw UsageError("warm start has wrong length");
    z.head(head) = warm_start->head(head).cwiseMax(-1.0).cwiseMin(1.0);
  }
  z.tail(k) = -b.to_vector();

  // Accelerated projected gradient (step 1/2) with function-value restart.
  // Q is linear, so Q y follows from the last two products and each
  // iteration costs one application of Q.
  double lower = 0.0;
  Eigen::VectorXd qz = projector.apply(z);
  Eigen::VectorXd y = z, qy = qz;
  Eigen::VectorXd z_next(n);
  double t = 1.0;
  double prev_dist = qz.norm();
  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    const double dist = qz.norm();
    lower = std::max(lower, weak_duality_bound(qz, dist, head, b));
    if (dist <= opts.zero_cutoff) {
      out.converged = true;
      out.below_cutoff = true;
      break;
    }
    const double bracket = dist - lower;
    if (bracket <= opts.gap_tol * std::max(1.0, dist)) {
      out.converged = true;
      break;
    }

    // z+ = clip(y - Q y) on the head; the tail stays at -b.
    double step = 0.0;
    z_next.tail(k) = z.tail(k);
    for (int i = 0; i < head; ++i) {
      z_next(i) = std::clamp(y(i) - qy(i), -1.0, 1.0);
      step = std::max(step, std::abs(z_next(i) - y(i)));
    }
    if (step <= opts.fixed_point_tol && bracket <= 1e-6) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd qz_next = projector.apply(z_next);
    const double next_dist = qz_next.norm();
    if (next_dist > prev_dist) {
      t = 1.0;
      y = z_next;
      qy = qz_next;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double mom = (t - 1.0) / t_next;
      y = z_next + mom * (z_next - z);
      qy = qz_next + mom * (qz_next - qz);
      t = t_next;
    }
    prev_dist = next_dist;
    z.swap(z_next);
    qz.swap(qz_next);
  }

  out.z_star = std::move(z);
  out.distance = projector.apply(out.z_star).norm();
  out.lower_bound = std::min(lower, out.distance);
  return out;
}

double primal_tau_reference(const NullProjector& projector, int k, const SignPattern& b,
                            const PrimalOptions& opts) {
  check_args(projector, k, b);
  const int n = projector.shape.n;
  if (n > 60) throw UsageError("primal_tau_reference is limited to n <= 60");
  const int head = n - k;
  const Eigen::MatrixXd& basis = projector.dperp;  // (n-m) x n
  const Eigen::VectorXd bt = b.to_vector();

  auto objective = [&](const Eigen::VectorXd& w) {
    return w.head(head).lpNorm<1>() - bt.dot(w.tail(k));
  };
  auto project_ball = [](Eigen::VectorXd& u) {
    const double norm = u.norm();
    if (norm > 1.0) u /= norm;
  };

  Eigen::VectorXd u = Eigen::VectorXd::Zero(basis.rows());
  double best = 0.0;  // w = 0
  double mu = 1e-1;
  for (int stage = 0; stage < opts.stages; ++stage, mu *= 0.1) {
    // FISTA with gradient-based restart; the smoothed gradient is 1/mu
    // Lipschitz because the basis rows are orthonormal.
    auto smoothed = [&](const Eigen::VectorXd& w) {
      double v = -bt.dot(w.tail(k));
      for (int i = 0; i < head; ++i) {
        const double a = std::abs(w(i));
        v += a <= mu ? 0.5 * a * a / mu : a - 0.5 * mu;
      }
      return v;
    };
    Eigen::VectorXd y = u, u_prev = u;
    double t = 1.0;
    double f_prev = smoothed(basis.transpose() * u);
    for (int it = 0; it < opts.iterations_per_stage; ++it) {
      const Eigen::VectorXd wy = basis.transpose() * y;
      Eigen::VectorXd g(n);
      for (int i = 0; i < head; ++i) g(i) = std::clamp(wy(i) / mu, -1.0, 1.0);
      g.tail(k) = -bt;
      Eigen::VectorXd u_next = y - mu * (basis * g);
      project_ball(u_next);

      const Eigen::VectorXd w_next = basis.transpose() * u_next;
      best = std::min(best, objective(w_next));
      const double f_next = smoothed(w_next);

      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      if (f_next > f_prev) {
        // restart momentum
        t = 1.0;
        y = u_next;
      } else {
        y = u_next + ((t - 1.0) / t_next) * (u_next - u);
        t = t_next;
      }
      u_prev = u;
      u = std::move(u_next);
      f_prev = f_next;
      if ((u - u_prev).norm() < 1e-13) break;
    }
  }
  return best;
}

}  // namespace l1sec

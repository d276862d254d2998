#include "l1sec/certificate.hpp"

#include <sstream>
#include <vector>

#include "l1sec/errors.hpp"

namespace l1sec {

Certificate measure_certificate(const Eigen::MatrixXd& a, int k, Eigen::VectorXd w) {
  const auto n = w.size();
  if (a.cols() != n || k < 0 || k > n) throw UsageError("certificate dimensions do not match");
  Certificate c;
  c.head_l1 = w.head(n - k).lpNorm<1>();
  c.tail_l1 = w.tail(k).lpNorm<1>();
  c.gap = c.tail_l1 - c.head_l1;
  c.nullspace_residual = (a * w).norm() / a.norm();
  c.w = std::move(w);
  return c;
}

Certificate extract_certificate(const NullProjector& projector, int k, const DualSolve& solve,
                                double positivity_threshold) {
  if (!solve.converged) throw UsageError("extract_certificate: dual solve did not converge");
  if (!(solve.distance > positivity_threshold)) {
    throw UsageError("extract_certificate: distance is not above the positivity threshold");
  }
  Certificate c = measure_certificate(projector.a, k, -projector.apply(solve.z_star));
  if (!(c.gap > 0.0) || !(c.nullspace_residual <= 1e-8)) {
    std::ostringstream os;
    os << "certificate rejected: gap " << c.gap << ", null-space residual "
       << c.nullspace_residual;
    throw CertificateRejected(os.str(), c.gap);
  }
  return c;
}

ConstructionReport verify_theorem2_construction(const Eigen::MatrixXd& a, int k,
                                                const Certificate& cert) {
  const auto n = cert.w.size();
  ConstructionReport r;
  if (a.cols() != n || k < 1 || k > n) {
    r.reason = "dimension mismatch";
    return r;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x.tail(k) = -cert.w.tail(k);
  const Eigen::VectorXd moved = x + cert.w;

  r.l1_x_plus_w = moved.lpNorm<1>();
  r.l1_x = x.lpNorm<1>();
  r.residual = (a * moved - a * x).norm();
  r.residual_limit = 1e-8 * a.norm() * cert.w.norm();
  if (!(r.l1_x_plus_w < r.l1_x)) {
    r.reason = "||x + w||_1 is not below ||x||_1";
  } else if (!(r.residual <= r.residual_limit)) {
    r.reason = "A(x + w) differs from A x";
  } else {
    r.pass = true;
  }
  return r;
}

nlohmann::json certificate_to_json(const ProblemShape& shape, const SignPattern& b,
                                   const Certificate& cert) {
  std::vector<double> w(cert.w.data(), cert.w.data() + cert.w.size());
  return {{"n", shape.n},
          {"m", shape.m},
          {"k", shape.k},
          {"b", b.signs()},
          {"w", w},
          {"head_l1", cert.head_l1},
          {"tail_l1", cert.tail_l1},
          {"gap", cert.gap},
          {"nullspace_residual", cert.nullspace_residual}};
}

}  // namespace l1sec

#include "l1sec/sign_margin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "l1sec/errors.hpp"

namespace l1sec {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr int kRefactorEvery = 64;
constexpr int kBlandAfter = 30;  // consecutive degenerate pivots before switching rules
}  // namespace

SignMargin::SignMargin(const NullProjector& projector, int k) : k_(k) {
  const int n = projector.shape.n;
  const int m = projector.shape.m;
  if (k < 1 || k > m) {
    throw UsageError("sign margin needs 1 <= k <= m, got k=" + std::to_string(k));
  }
  head_ = n - k;
  free_dims_ = m - k;

  const Eigen::MatrixXd& d = projector.row_basis;  // n x m
  const Eigen::MatrixXd tail_t = d.bottomRows(k).transpose();  // m x k
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(tail_t);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const double rmax = r.diagonal().cwiseAbs().maxCoeff();
  if (!(r.diagonal().cwiseAbs().minCoeff() > 1e-10 * std::max(rmax, 1e-300))) {
    throw NumericalFailure("support rows of the row-space basis are rank deficient");
  }
  // D_T = R^T Q1^T, so y0 = Q1 R^{-T} b solves D_T y0 = b.
  const Eigen::MatrixXd r_inv_t =
      r.transpose().triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(k, k));
  tail_map_ = d.topRows(head_) * (q.leftCols(k) * r_inv_t);
  g_ = d.topRows(head_) * q.rightCols(free_dims_);

  find_initial_basis();
}

Eigen::VectorXd SignMargin::column(int j) const {
  Eigen::VectorXd a(free_dims_ + 1);
  a(0) = 1.0;
  if (j < head_) {
    a.tail(free_dims_) = g_.row(j).transpose();
  } else {
    a.tail(free_dims_) = -g_.row(j - head_).transpose();
  }
  return a;
}

double SignMargin::cost(const Eigen::VectorXd& c, int j) const {
  return j < head_ ? c(j) : -c(j - head_);
}

void SignMargin::refactor() {
  const int rows = free_dims_ + 1;
  Eigen::MatrixXd b(rows, rows);
  for (int i = 0; i < rows; ++i) b.col(i) = column(basis_[std::size_t(i)]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  binv_ = lu.inverse();
  xb_ = binv_.col(0).cwiseMax(0.0);
}

// Any p+1 rows S of G admit r_S != 0 with G_S^T r_S = 0; splitting r_S into
// its positive and negative parts gives a basic feasible solution.
void SignMargin::find_initial_basis() {
  const int rows = free_dims_ + 1;
  const int room = head_ - rows;  // >= 0 because n > m
  const int attempts = std::min(room + 1, 25);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const int start = attempts == 1 ? 0 : static_cast<int>(std::int64_t(room) * attempt / (attempts - 1));
    Eigen::VectorXd weights(rows);
    if (free_dims_ == 0) {
      weights(0) = 1.0;
    } else {
      const Eigen::MatrixXd block = g_.middleRows(start, rows);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
      const Eigen::MatrixXd q = qr.householderQ();
      weights = q.col(rows - 1);
    }
    weights /= weights.lpNorm<1>();

    basis_.assign(std::size_t(rows), 0);
    for (int i = 0; i < rows; ++i) {
      basis_[std::size_t(i)] = weights(i) >= 0.0 ? start + i : head_ + start + i;
    }
    Eigen::MatrixXd b(rows, rows);
    for (int i = 0; i < rows; ++i) b.col(i) = column(basis_[std::size_t(i)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (lu.rcond() > 1e-10) {
      binv_ = lu.inverse();
      xb_ = binv_.col(0).cwiseMax(0.0);
      return;
    }
  }
  throw NumericalFailure("sign margin: no well-conditioned starting basis");
}

MarginEval SignMargin::evaluate(const SignPattern& b) {
  if (b.size() != k_) throw UsageError("sign pattern length differs from k");
  const int rows = free_dims_ + 1;
  const Eigen::VectorXd c = tail_map_ * b.to_vector();
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  const double opt_tol = 1e-11 * scale;

  refactor();
  std::vector<char> in_basis(std::size_t(2 * head_), 0);
  for (int j : basis_) in_basis[std::size_t(j)] = 1;

  MarginEval out;
  const int max_pivots = 50 * rows + 1000;
  int since_refactor = 0;
  int degenerate_run = 0;
  Eigen::VectorXd cb(rows), pi(rows), s;
  while (true) {
    for (int i = 0; i < rows; ++i) cb(i) = cost(c, basis_[std::size_t(i)]);
    pi = binv_.transpose() * cb;
    s = g_ * pi.tail(free_dims_);

    const bool bland = degenerate_run >= kBlandAfter;
    int entering = -1;
    double best = opt_tol;
    for (int j = 0; j < 2 * head_ && !(bland && entering >= 0); ++j) {
      if (in_basis[std::size_t(j)]) continue;
      const int i = j < head_ ? j : j - head_;
      const double reduced = j < head_ ? c(i) - pi(0) - s(i) : -c(i) - pi(0) + s(i);
      if (reduced > best) {
        best = reduced;
        entering = j;
      }
    }
    if (entering < 0) break;
    if (out.pivots >= max_pivots) {
      throw NumericalFailure("sign margin: simplex pivot limit reached");
    }

    const Eigen::VectorXd dir = binv_ * column(entering);
    int leaving = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (dir(r) <= kPivotTol) continue;
      const double t = xb_(r) / dir(r);
      const bool better = t < ratio - 1e-14 ||
                          (t <= ratio + 1e-14 && leaving >= 0 &&
                           (bland ? basis_[std::size_t(r)] < basis_[std::size_t(leaving)]
                                  : dir(r) > dir(leaving)));
      if (leaving < 0 || better) {
        ratio = t;
        leaving = r;
      }
    }
    if (leaving < 0) throw NumericalFailure("sign margin: unbounded direction");

    const double theta = xb_(leaving) / dir(leaving);
    degenerate_run = theta <= 1e-15 ? degenerate_run + 1 : 0;
    xb_ -= theta * dir;
    xb_(leaving) = theta;
    xb_ = xb_.cwiseMax(0.0);

    const Eigen::RowVectorXd pivot_row = binv_.row(leaving) / dir(leaving);
    for (int r = 0; r < rows; ++r) {
      if (r != leaving) binv_.row(r) -= dir(r) * pivot_row;
    }
    binv_.row(leaving) = pivot_row;

    in_basis[std::size_t(basis_[std::size_t(leaving)])] = 0;
    in_basis[std::size_t(entering)] = 1;
    basis_[std::size_t(leaving)] = entering;
    ++out.pivots;
    if (++since_refactor >= kRefactorEvery) {
      refactor();
      since_refactor = 0;
    }
  }

  out.value = cb.dot(xb_) / std::max(xb_.sum(), 1e-300);
  out.upper = (c - s).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace l1sec

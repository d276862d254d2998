#pragma once

// Seeded Gaussian measurement matrices and their null-space projectors.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string_view>

namespace l1sec {

struct ProblemShape {
  int n = 0;
  int m = 0;
  int k = 0;

  /// Throws UsageError unless 1 <= m < n and 0 <= k <= n.
  void validate() const;
  /// True when k < m, the regime the threshold curves describe.
  bool in_threshold_regime() const { return k < m; }
  double alpha() const { return double(m) / n; }
  double beta() const { return double(k) / n; }
};

struct GaussianInstance {
  ProblemShape shape;
  std::uint64_t seed = 0;
  Eigen::MatrixXd a;  // m x n
};

// Orthonormal bases of the null space and row space of an m x n matrix,
// taken from its full SVD.
struct NullProjector {
  ProblemShape shape;
  Eigen::MatrixXd a;          // m x n measurement matrix
  Eigen::MatrixXd dperp;      // (n-m) x n, orthonormal rows spanning null(A)
  Eigen::MatrixXd row_basis;  // n x m, orthonormal columns spanning row(A)
  Eigen::VectorXd singular_values;

  /// Q z, the orthogonal projection of z onto null(A). Uses whichever basis
  /// is thinner.
  Eigen::VectorXd apply(const Eigen::VectorXd& z) const;
  /// Explicit n x n projector Q = dperp^T dperp.
  Eigen::MatrixXd matrix() const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Uniform double in (0, 1] at position `counter` of the stream keyed by seed.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

/// m x n matrix of i.i.d. N(0,1) entries, filled row-major by Box-Muller on
/// the counter stream: entry e uses uniforms 2*(e/2) and 2*(e/2)+1, cosine
/// branch for even e and sine branch for odd e.
GaussianInstance sample_gaussian_matrix(const ProblemShape& shape, std::uint64_t seed);

/// Null-space projector of `a` (requires full row rank, m < n). Throws
/// NumericalFailure when the smallest singular value is below 1e-8 times the
/// largest.
NullProjector null_projector(const Eigen::MatrixXd& a, int k = 0);
NullProjector null_projector(const GaussianInstance& instance);

/// Per-repetition seed; deterministic and collision-free in practice.
std::uint64_t derive_rep_seed(std::uint64_t base_seed, std::uint64_t rep_index);

/// Plain-text matrix: one row per line, comma-separated decimals, no header.
/// Throws UsageError on unparsable fields or ragged rows.
Eigen::MatrixXd parse_matrix_csv(std::string_view text);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

}  // namespace l1sec

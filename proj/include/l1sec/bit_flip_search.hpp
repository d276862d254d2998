#pragma once

// Local search over sign patterns for a certified sectional failure of l1
// recovery on the support block formed by the last k coordinates.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "l1sec/certificate.hpp"
#include "l1sec/dual_distance.hpp"
#include "l1sec/random_instances.hpp"
#include "l1sec/sign_pattern.hpp"

namespace l1sec {

enum class Verdict { CertifiedFailure, NotCertified };

const char* verdict_name(Verdict v);

struct SearchOptions {
  int max_passes = 50;             // cap on flips is max_passes * k
  double accept_tol = 1e-9;        // minimum margin improvement to keep a flip
  double margin_tol = 1e-9;        // margin must exceed 1 + margin_tol to try certifying
  double positivity_threshold = 0.0;  // <= 0 selects 1e-6 * sqrt(n)
  DualSolveOptions dual;
};

struct TauOutcome {
  Verdict verdict = Verdict::NotCertified;
  SignPattern best_b;
  double best_margin = 0.0;
  // Dual distance at best_b. Zero without a solve when the margin is at most
  // one, since the box slice then meets the row space.
  double best_distance = 0.0;
  std::optional<Certificate> certificate;
  std::optional<ConstructionReport> construction;
  int flips_evaluated = 0;
  int dual_solves = 0;
  std::vector<double> accepted_margins;  // starting margin, then each accepted flip
  bool solver_warning = false;
  std::string diagnostic;
  double seconds = 0.0;
};

double default_positivity_threshold(int n);

/// Cyclic single-flip search starting from b = (+1, ..., +1). A flip is kept
/// when it raises the sign margin by more than accept_tol; the search stops
/// with CertifiedFailure once a pattern with margin above one yields a
/// converged dual distance above the positivity threshold and a verified
/// certificate, and with NotCertified after k consecutive rejected flips.
/// NotCertified is one-sided: it does not prove recovery.
///
/// Requires 1 <= k <= m. k = 0 returns NotCertified immediately.
TauOutcome bit_flip_search(const NullProjector& projector, int k, const SearchOptions& opts = {});

/// Factorizes `a`, runs the search on the last k columns as support, and
/// re-checks any certificate with the explicit sparse-vector construction.
TauOutcome estimate_failure(const Eigen::MatrixXd& a, int k, const SearchOptions& opts = {});
TauOutcome estimate_failure(const GaussianInstance& instance, int k,
                            const SearchOptions& opts = {});

}  // namespace l1sec

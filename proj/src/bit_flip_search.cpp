#include "l1sec/bit_flip_search.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "l1sec/errors.hpp"
#include "l1sec/sign_margin.hpp"

namespace l1sec {

const char* verdict_name(Verdict v) {
  return v == Verdict::CertifiedFailure ? "CertifiedFailure" : "NotCertified";
}

double default_positivity_threshold(int n) { return 1e-6 * std::sqrt(double(n)); }

namespace {

class Search {
 public:
  Search(const NullProjector& projector, int k, const SearchOptions& opts)
      : projector_(projector),
        k_(k),
        opts_(opts),
        threshold_(opts.positivity_threshold > 0.0 ? opts.positivity_threshold
                                                   : default_positivity_threshold(projector.shape.n)),
        margin_(projector, k) {}

  TauOutcome run() {
    SignPattern b = SignPattern::all_plus(k_);
    double best = margin_.evaluate(b).value;
    out_.best_b = b;
    out_.best_margin = best;
    out_.accepted_margins.push_back(best);
    if (try_certify(b, best)) return finish();

    const int max_flips = opts_.max_passes * k_;
    int rejected_in_a_row = 0;
    for (int j = 0; rejected_in_a_row < k_ && out_.flips_evaluated < max_flips; ++j) {
      const int i = j % k_;
      b.flip(i);
      const double value = margin_.evaluate(b).value;
      ++out_.flips_evaluated;
      if (value > best + opts_.accept_tol) {
        best = value;
        rejected_in_a_row = 0;
        out_.best_b = b;
        out_.best_margin = best;
        out_.accepted_margins.push_back(best);
        if (try_certify(b, best)) return finish();
      } else {
        b.flip(i);
        ++rejected_in_a_row;
      }
    }
    return finish();
  }

 private:
  bool try_certify(const SignPattern& b, double margin) {
    if (!(margin > 1.0 + opts_.margin_tol)) return false;
    const DualSolve solve =
        dual_distance(projector_, k_, b, opts_.dual, warm_.size() ? &warm_ : nullptr);
    ++out_.dual_solves;
    warm_ = solve.z_star;
    out_.best_distance = solve.distance;
    if (!solve.converged) {
      out_.solver_warning = true;
      out_.diagnostic = "dual solve hit the iteration cap at b=" + b.to_string();
      return false;
    }
    if (!(solve.distance > threshold_)) return false;
    try {
      out_.certificate = extract_certificate(projector_, k_, solve, threshold_);
    } catch (const CertificateRejected& e) {
      out_.solver_warning = true;
      out_.diagnostic = e.what();
      return false;
    }
    out_.verdict = Verdict::CertifiedFailure;
    return true;
  }

  TauOutcome finish() { return std::move(out_); }

  const NullProjector& projector_;
  int k_;
  SearchOptions opts_;
  double threshold_;
  SignMargin margin_;
  Eigen::VectorXd warm_;
  TauOutcome out_;
};

}  // namespace

TauOutcome bit_flip_search(const NullProjector& projector, int k, const SearchOptions& opts) {
  if (k == 0) {
    TauOutcome out;
    out.diagnostic = "k = 0: no support block";
    return out;
  }
  if (k < 0 || k > projector.shape.m) {
    throw UsageError("bit_flip_search needs 1 <= k <= m, got k=" + std::to_string(k));
  }
  if (opts.max_passes < 1) throw UsageError("max_passes must be positive");
  return Search(projector, k, opts).run();
}

TauOutcome estimate_failure(const Eigen::MatrixXd& a, int k, const SearchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  TauOutcome out;
  if (k == 0) {
    ProblemShape{int(a.cols()), int(a.rows()), 0}.validate();
    out.diagnostic = "k = 0: no support block";
  } else {
    const NullProjector projector = null_projector(a, k);
    out = bit_flip_search(projector, k, opts);
    if (out.certificate) {
      out.construction = verify_theorem2_construction(a, k, *out.certificate);
      if (!out.construction->pass) {
        out.verdict = Verdict::NotCertified;
        out.solver_warning = true;
        out.diagnostic = "construction check failed: " + out.construction->reason;
        out.certificate.reset();
      }
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

TauOutcome estimate_failure(const GaussianInstance& instance, int k, const SearchOptions& opts) {
  return estimate_failure(instance.a, k, opts);
}

}  // namespace l1sec

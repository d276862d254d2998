#pragma once

// Monte Carlo failure-rate experiments over (n, m, k) cells.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l1sec/bit_flip_search.hpp"

namespace l1sec {

struct CellSpec {
  int n = 0;
  int m = 0;
  int k = 0;
  int reps = 25;
  std::uint64_t base_seed = 0;

  /// Throws UsageError unless m < n, 1 <= k < m and reps >= 1.
  void validate() const;
};

struct RepRecord {
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::NotCertified;
  int flips = 0;
  double seconds = 0.0;
  bool warning = false;
  std::string diagnostic;
};

struct CellResult {
  CellSpec spec;
  int failures = 0;
  std::vector<RepRecord> per_rep;
  std::optional<double> paper_reference_rate;

  double rate() const { return double(failures) / double(per_rep.size()); }
  double mean_flips() const;
  double mean_seconds() const;
};

struct HarnessOptions {
  SearchOptions search;
  int workers = 0;  // 0: L1SEC_WORKERS if set, else hardware concurrency
};

int resolve_worker_count(int requested);

/// Repetition r uses the matrix seeded by derive_rep_seed(base_seed, r).
/// Per-rep errors are recorded as NotCertified with a diagnostic.
CellResult run_cell(const CellSpec& spec, const HarnessOptions& opts = {});

/// Results are in input order and independent of the worker count.
std::vector<CellResult> run_suite(const std::vector<CellSpec>& cells,
                                  const HarnessOptions& opts = {});

struct PublishedCell {
  int table;  // 1 or 2
  int n, m, k;
  int errors;
  int reps;
  double rate() const { return double(errors) / reps; }
};

/// The published failure counts for all 54 cells of both tables.
const std::vector<PublishedCell>& builtin_tables();
std::optional<PublishedCell> lookup_published_cell(int n, int m, int k);
/// Cells of table 1 or 2 in publication order. Throws UsageError otherwise.
std::vector<CellSpec> builtin_suite(int table, int reps, std::uint64_t seed);

/// Header n,m,k,reps,failures,rate,paper_rate,mean_flips,mean_seconds. The
/// mean_seconds field is left empty unless include_timing is set, so that
/// reruns produce identical bytes.
std::string results_csv(const std::vector<CellResult>& results, bool include_timing);

/// Parses [{"n":400,"m":80,"k":15,"reps":25,"seed":7}, ...]; reps and seed
/// are optional. Throws UsageError on malformed input.
std::vector<CellSpec> parse_suite_json(std::string_view text, int default_reps,
                                       std::uint64_t default_seed);

}  // namespace l1sec

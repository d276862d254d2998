#include "l1sec/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <numeric>
#include <thread>

#include "l1sec/errors.hpp"
#include "l1sec/random_instances.hpp"

namespace l1sec {

void CellSpec::validate() const {
  if (m < 1 || m >= n) throw UsageError("cell needs m < n");
  if (k < 1 || k >= m) throw UsageError("cell needs 1 <= k < m");
  if (reps < 1) throw UsageError("cell needs reps >= 1");
}

double CellResult::mean_flips() const {
  if (per_rep.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : per_rep) total += r.flips;
  return total / double(per_rep.size());
}

double CellResult::mean_seconds() const {
  if (per_rep.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : per_rep) total += r.seconds;
  return total / double(per_rep.size());
}

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("L1SEC_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

RepRecord run_rep(const CellSpec& spec, int rep, const SearchOptions& search) {
  RepRecord rec;
  rec.seed = derive_rep_seed(spec.base_seed, std::uint64_t(rep));
  try {
    const GaussianInstance inst = sample_gaussian_matrix({spec.n, spec.m, spec.k}, rec.seed);
    const TauOutcome out = estimate_failure(inst, spec.k, search);
    rec.verdict = out.verdict;
    rec.flips = out.flips_evaluated;
    rec.seconds = out.seconds;
    rec.warning = out.solver_warning;
    rec.diagnostic = out.diagnostic;
  } catch (const std::exception& e) {
    rec.verdict = Verdict::NotCertified;
    rec.warning = true;
    rec.diagnostic = e.what();
  }
  return rec;
}

}  // namespace

std::vector<CellResult> run_suite(const std::vector<CellSpec>& cells, const HarnessOptions& opts) {
  for (const auto& c : cells) c.validate();

  std::vector<CellResult> results(cells.size());
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    results[i].spec = cells[i];
    results[i].per_rep.resize(std::size_t(cells[i].reps));
    for (int r = 0; r < cells[i].reps; ++r) tasks.emplace_back(i, r);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto [cell, rep] = tasks[t];
      results[cell].per_rep[std::size_t(rep)] = run_rep(cells[cell], rep, opts.search);
    }
  };
  const int workers = std::min<int>(resolve_worker_count(opts.workers), int(std::max<std::size_t>(tasks.size(), 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (auto& res : results) {
    res.failures = int(std::count_if(res.per_rep.begin(), res.per_rep.end(), [](const RepRecord& r) {
      return r.verdict == Verdict::CertifiedFailure;
    }));
    if (auto pub = lookup_published_cell(res.spec.n, res.spec.m, res.spec.k)) {
      res.paper_reference_rate = pub->rate();
    }
  }
  return results;
}

CellResult run_cell(const CellSpec& spec, const HarnessOptions& opts) {
  return run_suite({spec}, opts).front();
}

const std::vector<PublishedCell>& builtin_tables() {
  static const std::vector<PublishedCell> cells = [] {
    struct Column {
      int table, n, m;
      std::vector<std::array<int, 3>> rows;  // k, errors, reps
    };
    const std::vector<Column> columns = {
        {1, 800, 80, {{14, 99, 100}, {12, 79, 100}, {10, 22, 100}, {8, 0, 100}, {6, 0, 100}, {4, 0, 100}}},
        {1, 400, 80, {{15, 99, 100}, {14, 89, 100}, {13, 58, 100}, {12, 19, 100}, {11, 3, 100}, {10, 0, 100}}},
        {1, 400, 120, {{24, 99, 100}, {23, 80, 100}, {22, 44, 100}, {21, 21, 100}, {20, 7, 100}, {19, 1, 100}}},
        {1, 400, 160, {{35, 92, 100}, {34, 84, 100}, {33, 69, 100}, {32, 30, 100}, {31, 17, 100}, {30, 1, 27}}},
        {1, 400, 200, {{50, 99, 100}, {48, 90, 100}, {46, 53, 100}, {44, 13, 57}, {42, 4, 100}, {40, 0, 14}}},
        {2, 300, 180, {{51, 100, 100}, {49, 95, 100}, {47, 72, 100}, {44, 21, 99}, {42, 8, 100}, {40, 2, 100}}},
        {2, 200, 140, {{44, 98, 100}, {42, 81, 100}, {40, 50, 100}, {38, 19, 100}, {36, 13, 100}, {34, 0, 31}}},
        {2, 200, 160, {{58, 100, 100}, {55, 92, 100}, {53, 67, 100}, {50, 34, 100}, {48, 5, 28}, {45, 1, 100}}},
        {2, 200, 180, {{74, 99, 100}, {71, 91, 100}, {69, 68, 100}, {66, 22, 57}, {64, 9, 100}, {61, 1, 100}}},
    };
    std::vector<PublishedCell> out;
    for (const auto& col : columns) {
      for (const auto& [k, errors, reps] : col.rows) out.push_back({col.table, col.n, col.m, k, errors, reps});
    }
    return out;
  }();
  return cells;
}

std::optional<PublishedCell> lookup_published_cell(int n, int m, int k) {
  for (const auto& c : builtin_tables()) {
    if (c.n == n && c.m == m && c.k == k) return c;
  }
  return std::nullopt;
}

std::vector<CellSpec> builtin_suite(int table, int reps, std::uint64_t seed) {
  if (table != 1 && table != 2) throw UsageError("builtin table must be 1 or 2");
  if (reps < 1) throw UsageError("reps must be >= 1");
  std::vector<CellSpec> out;
  for (const auto& c : builtin_tables()) {
    if (c.table == table) out.push_back({c.n, c.m, c.k, reps, seed});
  }
  return out;
}

namespace {
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
}  // namespace

std::string results_csv(const std::vector<CellResult>& results, bool include_timing) {
  std::string out = "n,m,k,reps,failures,rate,paper_rate,mean_flips,mean_seconds\n";
  for (const auto& r : results) {
    out += std::to_string(r.spec.n) + ',' + std::to_string(r.spec.m) + ',' +
           std::to_string(r.spec.k) + ',' + std::to_string(r.spec.reps) + ',' +
           std::to_string(r.failures) + ',' + num(r.rate()) + ',' +
           (r.paper_reference_rate ? num(*r.paper_reference_rate) : std::string()) + ',' +
           num(r.mean_flips()) + ',' + (include_timing ? num(r.mean_seconds()) : std::string()) +
           '\n';
  }
  return out;
}

std::vector<CellSpec> parse_suite_json(std::string_view text, int default_reps,
                                       std::uint64_t default_seed) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("suite JSON: ") + e.what());
  }
  if (!doc.is_array()) throw UsageError("suite JSON must be an array of cells");
  std::vector<CellSpec> out;
  for (const auto& item : doc) {
    try {
      CellSpec c;
      c.n = item.at("n").get<int>();
      c.m = item.at("m").get<int>();
      c.k = item.at("k").get<int>();
      c.reps = item.value("reps", default_reps);
      c.base_seed = item.value("seed", default_seed);
      c.validate();
      out.push_back(c);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("suite JSON cell: ") + e.what());
    }
  }
  return out;
}

}  // namespace l1sec

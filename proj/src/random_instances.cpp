#include "l1sec/random_instances.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "l1sec/errors.hpp"

namespace l1sec {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

void ProblemShape::validate() const {
  if (m < 1 || n <= m) {
    throw UsageError("need 1 <= m < n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
  if (k < 0 || k > n) {
    throw UsageError("need 0 <= k <= n, got k=" + std::to_string(k));
  }
}

Eigen::VectorXd NullProjector::apply(const Eigen::VectorXd& z) const {
  if (row_basis.cols() <= dperp.rows()) {
    return z - row_basis * (row_basis.transpose() * z);
  }
  return dperp.transpose() * (dperp * z);
}

Eigen::MatrixXd NullProjector::matrix() const { return dperp.transpose() * dperp; }

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = mix64(seed + (counter + 1) * kGolden);
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

GaussianInstance sample_gaussian_matrix(const ProblemShape& shape, std::uint64_t seed) {
  shape.validate();
  GaussianInstance inst{shape, seed, Eigen::MatrixXd(shape.m, shape.n)};
  const std::uint64_t total = std::uint64_t(shape.m) * std::uint64_t(shape.n);
  for (std::uint64_t e = 0; e < total; e += 2) {
    const double u1 = counter_uniform(seed, e);
    const double u2 = counter_uniform(seed, e + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    inst.a(Eigen::Index(e / shape.n), Eigen::Index(e % shape.n)) = r * std::cos(angle);
    if (e + 1 < total) {
      inst.a(Eigen::Index((e + 1) / shape.n), Eigen::Index((e + 1) % shape.n)) = r * std::sin(angle);
    }
  }
  return inst;
}

NullProjector null_projector(const Eigen::MatrixXd& a, int k) {
  const ProblemShape shape{static_cast<int>(a.cols()), static_cast<int>(a.rows()), k};
  shape.validate();
  if (!a.allFinite()) throw UsageError("matrix has non-finite entries");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(shape.m - 1);
  if (!(largest > 0.0) || smallest <= 1e-8 * largest) {
    std::ostringstream os;
    os << "matrix is rank deficient: smallest singular value " << smallest << " vs largest "
       << largest;
    throw NumericalFailure(os.str());
  }
  const Eigen::MatrixXd& v = svd.matrixV();
  return NullProjector{shape, a, v.rightCols(shape.n - shape.m).transpose(), v.leftCols(shape.m), sv};
}

NullProjector null_projector(const GaussianInstance& instance) {
  return null_projector(instance.a, instance.shape.k);
}

std::uint64_t derive_rep_seed(std::uint64_t base_seed, std::uint64_t rep_index) {
  return mix64(base_seed ^ mix64(rep_index + kGolden));
}

Eigen::MatrixXd parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::vector<double> row;
    std::size_t fpos = 0;
    while (true) {
      std::size_t comma = line.find(',', fpos);
      std::string_view field = line.substr(fpos, comma == std::string_view::npos ? line.size() - fpos
                                                                                  : comma - fpos);
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
      if (!field.empty() && field.front() == '+') field.remove_prefix(1);
      double value = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw UsageError("line " + std::to_string(line_no) + ": cannot parse '" +
                         std::string(field) + "'");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      fpos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw UsageError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw UsageError("matrix file is empty");

  Eigen::MatrixXd a(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  }
  return a;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_csv(buf.str());
}

}  // namespace l1sec

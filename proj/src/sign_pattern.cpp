#include "l1sec/sign_pattern.hpp"

#include "l1sec/errors.hpp"

namespace l1sec {

SignPattern::SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw DomainError("sign pattern entries must be +1 or -1");
  }
}

SignPattern SignPattern::all_plus(int k) {
  if (k < 0) throw DomainError("negative sign pattern length");
  return SignPattern(std::vector<int>(static_cast<std::size_t>(k), 1));
}

SignPattern SignPattern::from_bits(int k, std::uint64_t bits) {
  if (k < 0 || k > 64) throw DomainError("sign pattern length outside [0, 64]");
  std::vector<int> s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = (bits >> i) & 1U ? -1 : 1;
  return SignPattern(std::move(s));
}

Eigen::VectorXd SignPattern::to_vector() const {
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v(i) = (*this)[i];
  return v;
}

std::string SignPattern::to_string() const {
  std::string out;
  out.reserve(signs_.size());
  for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

}  // namespace l1sec

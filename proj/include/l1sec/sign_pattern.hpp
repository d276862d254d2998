#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace l1sec {

// Signs b_i in {-1, +1} over the support block, i.e. the last k coordinates.
class SignPattern {
 public:
  SignPattern() = default;
  /// Throws DomainError if any entry is not exactly +1 or -1.
  explicit SignPattern(std::vector<int> signs);

  static SignPattern all_plus(int k);
  /// Pattern whose bit i (LSB first) set means b_i = -1.
  static SignPattern from_bits(int k, std::uint64_t bits);

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  void flip(int i) { signs_[static_cast<std::size_t>(i)] *= -1; }

  Eigen::VectorXd to_vector() const;
  const std::vector<int>& signs() const { return signs_; }
  std::string to_string() const;

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<int> signs_;
};

}  // namespace l1sec

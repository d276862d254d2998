#pragma once

#include <stdexcept>
#include <string>

namespace l1sec {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad user input: dimensions, options, file contents.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A solver could not produce a trustworthy answer (no bracket, rank loss,
// iteration cap).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed quantity violated a consistency check it must satisfy.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A candidate failure certificate did not pass arithmetic verification.
class CertificateRejected : public std::runtime_error {
 public:
  CertificateRejected(const std::string& what, double gap)
      : std::runtime_error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

}  // namespace l1sec

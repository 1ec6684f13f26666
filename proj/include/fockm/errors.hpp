#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockm {

/// A weighted quantity left the range of double precision.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, std::size_t index)
      : std::range_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// An adaptive integration did not reach its tolerance within the allowed refinements.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double achieved_error)
      : std::runtime_error(what + " (estimate " + std::to_string(estimate) + ", error " +
                           std::to_string(achieved_error) + ")"),
        estimate_(estimate),
        error_(achieved_error) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or mutually inconsistent input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree exactly did not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fockm

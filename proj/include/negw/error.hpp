#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negw {

/// Invalid parameters or file contents (bad breakpoints, duplicate overrides, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that do not fit together (length mismatch, k > n, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values, solver non-convergence, or an unsupported numerical configuration.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A row sum of W is (numerically) zero, so D cannot be inverted.
class DegenerateGraphError : public NumericalError {
 public:
  DegenerateGraphError(std::size_t index, double row_sum)
      : NumericalError("degenerate graph: row sum d[" + std::to_string(index) +
                       "] = " + std::to_string(row_sum) + " is numerically zero"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A numerical configuration the library deliberately does not handle
/// (for example the generalized eigenproblem with a nonpositive row sum).
class UnsupportedConfigurationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace negw

#pragma once

#include <stdexcept>
#include <string>

namespace rotodiff {

// Invalid user input: malformed configuration, out-of-range parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to meet its contract (quadrature did not
// converge, a propagation grid was too small, a matrix left its domain).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double achieved = 0.0)
      : std::runtime_error(what), achieved_(achieved) {}

  // Achieved error estimate or offending magnitude, when meaningful.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Mass reached the edge of the truncated angular momentum lattice.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rotodiff

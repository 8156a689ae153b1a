#pragma once

#include <stdexcept>
#include <string>

namespace airywell {

/// Argument outside the mathematical domain of an operation (NaN input,
/// k <= 0 for a zero index, a square root of a negative quantity, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent solver configuration (patch widths, box sizes, counts).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative procedure failed: non-finite function values inside a bracket,
/// a root search that ran out of roots, or a non-converged quadrature that
/// the caller required to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace airywell

#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Argument outside the open unit disk or outside a parameter's admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical method did not reach its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem size beyond what an operation supports.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A configuration does not cover the hyperbolic disk a statistic needs.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few data points for a fit.
class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bergman

namespace bergman {

/// A report or configuration file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bergman

#pragma once

#include <stdexcept>
#include <string>

namespace fxmot {

// Mismatched vector/matrix sizes or empty inputs where a size is required.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value outside its admissible domain (spin not in {-1,+1}, negative penalty weight, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Problem too large for an exhaustive routine.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Kalman update could not be carried out (singular innovation covariance, non-finite result).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fxmot

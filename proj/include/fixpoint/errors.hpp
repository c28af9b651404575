#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fixpoint {

/// Short form of a real for messages and names.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent caller input (dimension mismatch, empty sample, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A coordinate that is NaN or infinite.
class NonFiniteError : public InputError {
 public:
  using InputError::InputError;
};

/// A parameter outside the admissible range of a formula (for example lambda >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An orbit produced a non-finite iterate or distance.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : Error("divergence at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Ciric coefficients that are negative, or whose sum exceeds lambda at a tested pair.
class CoefficientError : public Error {
 public:
  using Error::Error;
};

/// Operation requested for a contraction kind that does not support it.
class UnsupportedKindError : public Error {
 public:
  using Error::Error;
};

/// Series truncation could not reach the requested tail tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace fixpoint

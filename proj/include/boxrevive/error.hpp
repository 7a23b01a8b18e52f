#pragma once

#include <stdexcept>
#include <string>

namespace boxrevive {

// Raised when an input violates a documented precondition. The CLI maps it
// to exit status 2.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation finishes but breaks one of its numerical
// guarantees (marginals, normalization, grid coverage). CLI exit status 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested ε could not be reached within the basis cap.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double achieved_norm, int n_reached)
      : NumericalError(what), achieved_norm_(achieved_norm), n_reached_(n_reached) {}

  double achieved_norm() const noexcept { return achieved_norm_; }
  int n_reached() const noexcept { return n_reached_; }

 private:
  double achieved_norm_;
  int n_reached_;
};

// A sampling grid does not span the support it must cover.
class CoverageError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace boxrevive

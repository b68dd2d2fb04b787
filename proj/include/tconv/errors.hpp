#pragma once

#include <stdexcept>
#include <string>

namespace tconv {

/// Malformed or inconsistent arguments (dimension mismatch, empty input, NaN).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A moment target that is not in the relative interior of the orbit image.
class TargetNotAttained : public InputError {
 public:
  using InputError::InputError;
};

/// An iterative solver gave up; carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace tconv

#pragma once

#include <stdexcept>
#include <string>

namespace conetest {

// Thrown for malformed user input: bad configuration documents, out-of-range
// flags, dimension mismatches in descriptors. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an estimator or solver fails numerically (non-convergence,
// failed bracketing, sampler validation). CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative-solver non-convergence; carries the residual reached so callers
// can report how close the best iterate came.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double residual, long iterations)
      : NumericalError(what + " (residual " + std::to_string(residual) +
                       " after " + std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const { return residual_; }
  long iterations() const { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

}  // namespace conetest

#pragma once

#include <stdexcept>
#include <string>

namespace otto {

/// Input outside the domain of a physical formula (non-finite values,
/// invalid parameters, empty quantization branch).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to produce a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density matrix carries an eigenvalue below -1e-10.
class PositivityError : public NumericError {
 public:
  PositivityError(const std::string& what, double eigenvalue)
      : NumericError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Fixed-point iteration on the cycle propagator did not settle.
class SlowConvergenceError : public NumericError {
 public:
  SlowConvergenceError(const std::string& what, double lambda2)
      : NumericError(what), lambda2_(lambda2) {}
  double lambda2() const noexcept { return lambda2_; }

 private:
  double lambda2_;
};

/// The adaptive integrator could not reach the requested tolerance.
class IntegratorError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Too few samples on a segment to form finite differences.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A limit cycle whose trajectory does not close on its anchor.
class StaleCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otto

namespace otto {

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otto

#pragma once

// Direct integration of the stroke equations of motion, independent of the
// closed-form propagators. Used as ground truth in tests and validation.

#include <variant>

#include "otto/propagators.hpp"
#include "otto/working_medium.hpp"

namespace otto {

struct OdeTolerance {
  double absolute = 1e-12;
  double relative = 1e-12;
  /// Upper bound on accepted steps before IntegratorError.
  long max_steps = 5'000'000;
};

using SegmentSpec = std::variant<IsochoreSpec, AdiabatSpec>;

/// Heisenberg equations of the isochore, integrated with an adaptive
/// Dormand-Prince 5(4) stepper.
StateVector ode_oracle(const IsochoreSpec& spec, const StateVector& initial,
                       const OdeTolerance& tol = {});

/// Time-dependent adiabat equations with the explicit constant-mu field
/// schedule omega(t):
///   dE/dt = (Omega_dot/Omega) E - Omega mu L
///   dL/dt = Omega mu E + (Omega_dot/Omega) L - Omega C
///   dC/dt = Omega L + (Omega_dot/Omega) C
///   dD/dt = (Omega_dot/Omega) D
StateVector ode_oracle(const AdiabatSpec& spec, const StateVector& initial,
                       const OdeTolerance& tol = {});

StateVector ode_oracle(const SegmentSpec& spec, const StateVector& initial,
                       const OdeTolerance& tol = {});

}  // namespace otto

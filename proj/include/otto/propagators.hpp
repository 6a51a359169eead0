#pragma once

// Exact 5x5 propagators of the cycle strokes acting on (E, L, C, D, 1).
//
// Isochores: constant generator with thermalization toward the Gibbs state
// of the bath, exponentiated exactly.
// Adiabats: constant adiabatic parameter mu = J omega_dot / Omega^3. In the
// scaled variables (E, L, C) / Omega the generator per unit of accumulated
// phase is constant, so the stroke is a rotation through angle q * theta
// with q = sqrt(1 + mu^2) followed by the Omega_end / Omega_start rescaling.

#include <Eigen/Core>

#include "otto/working_medium.hpp"

namespace otto {

using Mat3 = Eigen::Matrix3d;

enum class SegmentKind { isochore, adiabat, identity };

struct SegmentPropagator {
  Mat5 matrix = Mat5::Identity();
  SegmentKind kind = SegmentKind::identity;
  double duration = 0.0;

  Vec5 apply(const Vec5& v) const { return matrix * v; }
  StateVector apply(const StateVector& s) const {
    return StateVector::from_vector(matrix * s.to_vector());
  }
};

SegmentPropagator identity_propagator();

/// Which way the equilibrium energy points. `inverted` exists only to let
/// the validation harness prove it can detect a sign error.
enum class EquilibriumSign { toward_ground, inverted };

struct IsochoreSpec {
  double omega = 0.0;
  double j_coupling = 0.0;
  double bath_temp = 0.0;
  double k_down = 0.0;
  double duration = 0.0;
  EquilibriumSign sign = EquilibriumSign::toward_ground;

  void validate() const;
  double energy_scale() const;
  /// k_down * exp(-Omega / T), detailed balance with the downward rate.
  double k_up() const;
  /// Gamma = k_down + k_up.
  double gamma() const;
  /// -Omega (k_down - k_up) / Gamma = -Omega tanh(Omega / 2T).
  double equilibrium_energy() const;
  /// Fixed point of the D row, E_eq^2 / Omega.
  double equilibrium_d() const;

  IsochoreSpec with_duration(double t) const {
    IsochoreSpec s = *this;
    s.duration = t;
    return s;
  }
};

struct AdiabatSpec {
  double omega_start = 0.0;
  double omega_end = 0.0;
  double j_coupling = 0.0;
  double duration = 0.0;

  /// Throws DomainError for a non-positive duration or coinciding
  /// endpoints (mu undefined; ask for identity_propagator instead).
  void validate() const;

  double energy_scale_start() const;
  double energy_scale_end() const;
  /// (1/J) (omega_end / Omega_end - omega_start / Omega_start), signed.
  double k_bar() const;
  /// arcsin(omega_end / Omega_end) - arcsin(omega_start / Omega_start).
  double phi() const;
  /// k_bar / duration; sign of omega_end - omega_start.
  double mu() const;
  /// Accumulated phase, integral of Omega dt = phi / mu (always >= 0).
  double theta() const;
  double q() const;
  /// Rotation angle q * theta of the scaled (E, L, C) block.
  double rotation_angle() const;

  /// Field at time t in [0, duration] under the constant-mu schedule
  /// (omega / Omega is linear in time).
  double omega_at(double t) const;

  /// The sub-stroke from the start to time t; it has the same mu.
  AdiabatSpec truncated(double t) const;
};

/// Constant generator of an isochore: rows
///   dE/dt = -Gamma E + Gamma E_eq
///   dL/dt = -Gamma L - Omega C
///   dC/dt =  Omega L - Gamma C
///   dD/dt =  2 Gamma (E_eq / Omega) E - 2 Gamma D
///   dI/dt =  0
Mat5 isochore_generator(const IsochoreSpec& spec);

/// exp(duration * generator).
SegmentPropagator isochore_propagator(const IsochoreSpec& spec);

/// G(mu) = [[0, -mu, 0], [mu, 0, -1], [0, 1, 0]], the scaled-variable
/// generator per unit phase.
Mat3 adiabat_generator(double mu);

/// Exact constant-mu adiabat. A zero-duration request is allowed when the
/// endpoints differ and gives the sudden-quench limit.
SegmentPropagator adiabat_propagator(const AdiabatSpec& spec);

/// Rotation angle of the scaled (E, L, C) block read off a propagator
/// matrix, in (-pi, pi]; the sine is signed against the rotation axis
/// (1, 0, mu) / q.
double rotation_angle_of(const SegmentPropagator& p, const AdiabatSpec& spec);

/// Adiabat duration at which the rotation angle equals 2 pi l, using the
/// magnitudes of k_bar and phi between omega_cold and omega_hot. Throws
/// DomainError when 2 pi l <= |phi|.
double quantization_time(const CycleParams& params, double l);

/// Same landmark found without the closed form: scans adiabat durations,
/// unwraps the angle read off adiabat_propagator and bisects the crossing
/// of 2 pi l.
double quantization_time_root_find(const CycleParams& params, double l, double tolerance = 1e-13);

}  // namespace otto

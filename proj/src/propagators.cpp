#include "otto/propagators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "otto/errors.hpp"
#include "otto/matrix_exp.hpp"

namespace otto {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

// Wraps an angle difference into (-pi, pi].
double wrap(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

void pin_identity_row(Mat5& m) {
  m.row(4).setZero();
  m(4, 4) = 1.0;
}

}  // namespace

SegmentPropagator identity_propagator() { return {}; }

// ---------------------------------------------------------------- isochores

void IsochoreSpec::validate() const {
  require(finite_positive(omega), "isochore omega must be > 0");
  require(finite_positive(j_coupling), "isochore j_coupling must be > 0");
  require(finite_positive(bath_temp), "isochore bath_temp must be > 0");
  require(finite_non_negative(k_down), "isochore k_down must be >= 0");
  require(finite_non_negative(duration), "isochore duration must be >= 0");
}

double IsochoreSpec::energy_scale() const { return otto::energy_scale(omega, j_coupling); }

double IsochoreSpec::k_up() const { return k_down * std::exp(-energy_scale() / bath_temp); }

double IsochoreSpec::gamma() const { return k_down + k_up(); }

double IsochoreSpec::equilibrium_energy() const {
  const double big_omega = energy_scale();
  const double e_eq = -big_omega * std::tanh(0.5 * big_omega / bath_temp);
  return sign == EquilibriumSign::toward_ground ? e_eq : -e_eq;
}

double IsochoreSpec::equilibrium_d() const {
  const double e_eq = equilibrium_energy();
  return e_eq * e_eq / energy_scale();
}

Mat5 isochore_generator(const IsochoreSpec& spec) {
  spec.validate();
  const double big_omega = spec.energy_scale();
  const double gamma = spec.gamma();
  const double e_eq = spec.equilibrium_energy();

  Mat5 a = Mat5::Zero();
  a(0, 0) = -gamma;
  a(0, 4) = gamma * e_eq;
  a(1, 1) = -gamma;
  a(1, 2) = -big_omega;
  a(2, 1) = big_omega;
  a(2, 2) = -gamma;
  a(3, 0) = 2.0 * gamma * e_eq / big_omega;
  a(3, 3) = -2.0 * gamma;
  return a;
}

SegmentPropagator isochore_propagator(const IsochoreSpec& spec) {
  const Mat5 generator = isochore_generator(spec);
  SegmentPropagator p;
  p.kind = SegmentKind::isochore;
  p.duration = spec.duration;
  if (spec.duration == 0.0) return p;
  p.matrix = expm(generator * spec.duration);
  pin_identity_row(p.matrix);
  return p;
}

// ------------------------------------------------------------------ adiabats

void AdiabatSpec::validate() const {
  require(finite_positive(omega_start), "adiabat omega_start must be > 0");
  require(finite_positive(omega_end), "adiabat omega_end must be > 0");
  require(finite_positive(j_coupling), "adiabat j_coupling must be > 0");
  require(finite_non_negative(duration), "adiabat duration must be >= 0");
  require(omega_start != omega_end,
          "adiabat endpoints coincide; request identity_propagator explicitly");
}

double AdiabatSpec::energy_scale_start() const { return energy_scale(omega_start, j_coupling); }
double AdiabatSpec::energy_scale_end() const { return energy_scale(omega_end, j_coupling); }

double AdiabatSpec::k_bar() const {
  return (omega_end / energy_scale_end() - omega_start / energy_scale_start()) / j_coupling;
}

double AdiabatSpec::phi() const {
  // arcsin(omega / Omega) == atan(omega / J), which stays accurate near pi/2.
  return std::atan2(omega_end, j_coupling) - std::atan2(omega_start, j_coupling);
}

double AdiabatSpec::mu() const { return k_bar() / duration; }

double AdiabatSpec::theta() const { return phi() * duration / k_bar(); }

double AdiabatSpec::q() const { return std::sqrt(1.0 + mu() * mu()); }

double AdiabatSpec::rotation_angle() const { return std::hypot(theta(), phi()); }

double AdiabatSpec::omega_at(double t) const {
  if (duration == 0.0 || t <= 0.0) return omega_start;
  if (t >= duration) return omega_end;
  const double x0 = omega_start / energy_scale_start();
  const double x1 = omega_end / energy_scale_end();
  const double x = x0 + (x1 - x0) * (t / duration);
  return j_coupling * x / std::sqrt((1.0 - x) * (1.0 + x));
}

AdiabatSpec AdiabatSpec::truncated(double t) const {
  AdiabatSpec s = *this;
  s.omega_end = omega_at(t);
  s.duration = t;
  return s;
}

Mat3 adiabat_generator(double mu) {
  Mat3 g;
  g << 0.0, -mu, 0.0,  //
      mu, 0.0, -1.0,   //
      0.0, 1.0, 0.0;
  return g;
}

SegmentPropagator adiabat_propagator(const AdiabatSpec& spec) {
  spec.validate();
  // theta * G(mu) with theta * mu = phi written out, so the sudden limit
  // (duration -> 0, mu -> infinity) stays finite.
  const double phi = spec.phi();
  const double theta = spec.theta();
  Mat3 phase_generator;
  phase_generator << 0.0, -phi, 0.0,  //
      phi, 0.0, -theta,               //
      0.0, theta, 0.0;

  const double ratio = spec.energy_scale_end() / spec.energy_scale_start();
  SegmentPropagator p;
  p.kind = SegmentKind::adiabat;
  p.duration = spec.duration;
  p.matrix = Mat5::Identity();
  p.matrix.topLeftCorner<3, 3>() = ratio * expm(phase_generator);
  p.matrix(3, 3) = ratio;
  return p;
}

double rotation_angle_of(const SegmentPropagator& p, const AdiabatSpec& spec) {
  const double ratio = spec.energy_scale_end() / spec.energy_scale_start();
  const Mat3 r = p.matrix.topLeftCorner<3, 3>() / ratio;
  const double cosine = 0.5 * (r.trace() - 1.0);
  const Eigen::Vector3d axial(0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)),
                              0.5 * (r(1, 0) - r(0, 1)));
  // (1, 0, mu) direction, written as (theta, 0, phi) to survive mu -> inf.
  Eigen::Vector3d axis(spec.theta(), 0.0, spec.phi());
  if (axis.norm() == 0.0) return 0.0;
  axis.normalize();
  return std::atan2(axial.dot(axis), cosine);
}

double quantization_time(const CycleParams& params, double l) {
  const AdiabatSpec span{params.omega_cold, params.omega_hot, params.j_coupling, 0.0};
  const double k_bar = std::abs(span.k_bar());
  const double phi = std::abs(span.phi());
  const double target = 2.0 * std::numbers::pi * l;
  if (!std::isfinite(l) || !(target > phi)) {
    throw DomainError("quantization requires 2 pi l > |phi|");
  }
  const double ratio = target / phi;
  return k_bar * std::sqrt(ratio * ratio - 1.0);
}

double quantization_time_root_find(const CycleParams& params, double l, double tolerance) {
  const double target = 2.0 * std::numbers::pi * l;
  auto spec_at = [&](double t) {
    return AdiabatSpec{params.omega_cold, params.omega_hot, params.j_coupling, t};
  };
  auto raw_angle = [&](double t) {
    const AdiabatSpec s = spec_at(t);
    return rotation_angle_of(adiabat_propagator(s), s);
  };

  double t_prev = 0.0;
  double raw_prev = raw_angle(0.0);
  double unwrapped_prev = raw_prev;
  if (!std::isfinite(l) || unwrapped_prev >= target) {
    throw DomainError("quantization requires 2 pi l > |phi|");
  }

  double step = 1e-3;
  constexpr double max_duration = 1e6;
  while (t_prev < max_duration) {
    const double t = t_prev + step;
    const double raw = raw_angle(t);
    const double delta = wrap(raw - raw_prev);
    if (std::abs(delta) > std::numbers::pi / 4.0) {
      step *= 0.5;
      continue;
    }
    const double unwrapped = unwrapped_prev + delta;
    if (unwrapped >= target) {
      double lo = t_prev;
      double hi = t;
      const double base = unwrapped_prev;
      const double base_raw = raw_prev;
      while (hi - lo > tolerance * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = base + wrap(raw_angle(mid) - base_raw);
        (value >= target ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    t_prev = t;
    raw_prev = raw;
    unwrapped_prev = unwrapped;
    if (std::abs(delta) < std::numbers::pi / 32.0) step *= 2.0;
  }
  throw NumericError("quantization root-find did not bracket the target angle");
}

}  // namespace otto

#include "otto/ode_oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

#include "otto/errors.hpp"

namespace otto {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 4>;

template <typename System>
StateVector integrate(System system, double duration, const StateVector& initial,
                      const OdeTolerance& tol) {
  if (duration == 0.0) return initial;
  State x{initial.e_val, initial.l_val, initial.c_val, initial.d_val};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(tol.absolute,
                                                                           tol.relative);
  try {
    long steps = 0;
    auto count_steps = [&](const State&, double) {
      if (++steps > tol.max_steps) throw IntegratorError("ODE oracle exceeded its step budget");
    };
    odeint::integrate_adaptive(stepper, system, x, 0.0, duration, duration * 1e-3, count_steps);
  } catch (const odeint::odeint_error& e) {
    throw IntegratorError(std::string("ODE oracle failed: ") + e.what());
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw IntegratorError("ODE oracle produced non-finite state");
  }
  return {x[0], x[1], x[2], x[3]};
}

}  // namespace

StateVector ode_oracle(const IsochoreSpec& spec, const StateVector& initial,
                       const OdeTolerance& tol) {
  spec.validate();
  const double big_omega = spec.energy_scale();
  const double gamma = spec.gamma();
  const double e_eq = spec.equilibrium_energy();
  auto rhs = [=](const State& x, State& dxdt, double /*t*/) {
    dxdt[0] = -gamma * (x[0] - e_eq);
    dxdt[1] = -gamma * x[1] - big_omega * x[2];
    dxdt[2] = big_omega * x[1] - gamma * x[2];
    dxdt[3] = 2.0 * gamma * e_eq / big_omega * x[0] - 2.0 * gamma * x[3];
  };
  return integrate(rhs, spec.duration, initial, tol);
}

StateVector ode_oracle(const AdiabatSpec& spec, const StateVector& initial,
                       const OdeTolerance& tol) {
  spec.validate();
  if (spec.duration == 0.0) return initial;
  const double j = spec.j_coupling;
  const double mu = spec.mu();
  const double x0 = spec.omega_start / spec.energy_scale_start();
  auto rhs = [=](const State& x, State& dxdt, double t) {
    // omega / Omega advances linearly at rate J mu.
    const double ratio = x0 + j * mu * t;
    const double big_omega = j / std::sqrt((1.0 - ratio) * (1.0 + ratio));
    const double omega = ratio * big_omega;
    // Omega_dot / Omega = omega omega_dot / Omega^2 with omega_dot = mu Omega^3 / J.
    const double log_rate = mu * omega * big_omega / j;
    dxdt[0] = log_rate * x[0] - big_omega * mu * x[1];
    dxdt[1] = big_omega * mu * x[0] + log_rate * x[1] - big_omega * x[2];
    dxdt[2] = big_omega * x[1] + log_rate * x[2];
    dxdt[3] = log_rate * x[3];
  };
  return integrate(rhs, spec.duration, initial, tol);
}

StateVector ode_oracle(const SegmentSpec& spec, const StateVector& initial,
                       const OdeTolerance& tol) {
  return std::visit([&](const auto& s) { return ode_oracle(s, initial, tol); }, spec);
}

}  // namespace otto

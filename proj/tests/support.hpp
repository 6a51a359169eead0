#pragma once

// Shared fixtures: the published cycle times, independent oracles and
// random physical states.

#include <array>
#include <cmath>
#include <random>

#include "otto/working_medium.hpp"

namespace otto::test {

/// Cycle times a..l of the studied family.
inline constexpr std::array<double, 12> kPaperTaus{1.013534, 0.96527,   0.912180,  0.868743,
                                                   0.81683,  0.772216,  0.735444,  0.700423,
                                                   0.482635, 0.36197625, 0.2413175, 0.12065875};

/// Published cooling rates Q_c / tau for the same cycles.
inline constexpr std::array<double, 12> kPaperCooling{1.57e-4,  1.445e-4, 1.133e-4, 4.142e-5,
                                                      -5.43e-4, -8.2e-3,  -1.93e-3, -3.47e-4,
                                                      1.29e-4,  1.45e-4,  1.513e-4, 1.541e-4};

/// Populations of the spectrum {-Omega, 0, 0, Omega} at temperature T,
/// ordered ground, middle, middle, excited.
inline std::array<double, 4> gibbs_populations(double omega, double temp) {
  const double w[4] = {std::exp(omega / temp), 1.0, 1.0, std::exp(-omega / temp)};
  const double z = w[0] + w[1] + w[2] + w[3];
  return {w[0] / z, w[1] / z, w[2] / z, w[3] / z};
}

/// (E, D) read off populations: E = tr(rho H), and D from the outer pair,
/// p_ground + p_excited = (1 + D / Omega) / 2.
inline StateVector state_from_populations(const std::array<double, 4>& p, double omega) {
  StateVector s;
  s.e_val = omega * (p[3] - p[0]);
  s.d_val = omega * (2.0 * (p[0] + p[3]) - 1.0);
  return s;
}

/// A random physical state: populations with equal middle entries and a
/// corner coherence inside the positivity disc, scaled by `coherence_fraction`.
inline StateVector random_physical_state(std::mt19937_64& rng, double omega,
                                         double coherence_fraction = -1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = u(rng), b = u(rng), m = u(rng);
  const double total = a + b + 2.0 * m;
  const std::array<double, 4> p{a / total, m / total, m / total, b / total};
  StateVector s = state_from_populations(p, omega);
  const double frac = coherence_fraction < 0.0 ? u(rng) : coherence_fraction;
  const double radius = frac * std::sqrt(p[0] * p[3]);
  const double phase = 2.0 * M_PI * u(rng);
  // Corner entry (L + iC) / (2 Omega) has modulus `radius`.
  s.l_val = 2.0 * omega * radius * std::cos(phase);
  s.c_val = 2.0 * omega * radius * std::sin(phase);
  return s;
}

}  // namespace otto::test

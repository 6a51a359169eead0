#include "otto/validate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <limits>
#include <random>

#include "otto/atlas.hpp"
#include "otto/errors.hpp"
#include "otto/ode_oracle.hpp"

namespace otto {
namespace {

double max_gap(const StateVector& a, const StateVector& b) {
  return std::max({std::abs(a.e_val - b.e_val), std::abs(a.l_val - b.l_val),
                   std::abs(a.c_val - b.c_val), std::abs(a.d_val - b.d_val)});
}

StateVector random_state(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-0.5 * scale, 0.5 * scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

template <class Fn>
CheckResult guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, CheckStatus::fail, std::string("threw: ") + e.what()};
  }
}

CheckResult propagator_vs_ode(const std::string& name, const std::vector<SegmentSpec>& specs,
                              std::mt19937_64& rng, double scale) {
  double worst = 0.0;
  for (const SegmentSpec& spec : specs) {
    const StateVector s0 = random_state(rng, scale);
    const SegmentPropagator p = std::visit(
        [](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, IsochoreSpec>) {
            return isochore_propagator(s);
          } else {
            return adiabat_propagator(s);
          }
        },
        spec);
    worst = std::max(worst, max_gap(p.apply(s0), ode_oracle(spec, s0)));
  }
  const bool ok = worst < 1e-8;
  return {name, ok ? CheckStatus::pass : CheckStatus::fail,
          fmt::format("{} segments, max deviation {:.3e} (limit 1e-8)", specs.size(), worst)};
}

CheckResult gibbs_check(const std::string& name, const IsochoreSpec& bath) {
  if (bath.k_down == 0.0) return {name, CheckStatus::not_applicable, "bath decoupled (rate 0)"};
  const double omega = bath.energy_scale();
  const StateVector gibbs = gibbs_state(omega, bath.bath_temp);
  // Stationarity of the generator and relaxation of the propagator.
  const Vec5 drift = isochore_generator(bath) * gibbs.to_vector();
  const double stationary = drift.head<4>().cwiseAbs().maxCoeff();
  const IsochoreSpec long_run = bath.with_duration(60.0 / bath.gamma());
  const double relaxed = max_gap(isochore_propagator(long_run).apply(StateVector{}), gibbs);
  const double worst = std::max(stationary, relaxed);
  const bool ok = worst < 1e-9 * std::max(1.0, omega);
  return {name, ok ? CheckStatus::pass : CheckStatus::fail,
          fmt::format("generator drift {:.3e}, relaxed gap {:.3e}", stationary, relaxed)};
}

}  // namespace

std::vector<CheckResult> run_validation(const CycleParams& params, const ValidateOptions& options) {
  params.validate();
  std::vector<CheckResult> results;
  std::mt19937_64 rng(options.seed);
  const CycleSegments seg = segment_specs(params);
  const double scale = params.energy_scale_hot();

  results.push_back(guarded("isochore_vs_ode", [&] {
    std::uniform_real_distribution<double> dur(0.01, 3.0);
    std::vector<SegmentSpec> specs;
    for (int i = 0; i < 8; ++i) {
      specs.emplace_back((i % 2 ? seg.hot : seg.cold).with_duration(dur(rng)));
    }
    return propagator_vs_ode("isochore_vs_ode", specs, rng, scale);
  }));

  results.push_back(guarded("adiabat_vs_ode", [&] {
    std::uniform_real_distribution<double> dur(0.02, 2.0);
    std::vector<SegmentSpec> specs;
    for (int i = 0; i < 8; ++i) {
      AdiabatSpec a = i % 2 ? seg.expansion : seg.compression;
      a.duration = dur(rng);
      specs.emplace_back(a);
    }
    return propagator_vs_ode("adiabat_vs_ode", specs, rng, scale);
  }));

  for (const auto& [name, bath] : {std::pair{"gibbs_fixed_point_cold", seg.cold},
                                   std::pair{"gibbs_fixed_point_hot", seg.hot}}) {
    IsochoreSpec spec = bath;
    if (options.flip_eeq_sign) spec.sign = EquilibriumSign::inverted;
    results.push_back(guarded(name, [&] { return gibbs_check(name, spec); }));
  }

  results.push_back(guarded("quantization_formula_vs_root_find", [&] {
    double worst = 0.0;
    for (double l : {0.5, 1.0}) {
      worst = std::max(worst, std::abs(quantization_time(params, l) -
                                       quantization_time_root_find(params, l)));
    }
    return CheckResult{"quantization_formula_vs_root_find",
                       worst < 1e-6 ? CheckStatus::pass : CheckStatus::fail,
                       fmt::format("l = 1/2, 1: max difference {:.3e} (limit 1e-6)", worst)};
  }));

  // Thermodynamic closure over a small family around the configured cycle.
  std::vector<double> taus = make_grid(0.1, 1.2, 12, Spacing::linear);
  taus.push_back(params.tau_cycle);
  const bool dissipative = params.k_down_cold > 0.0 && params.k_down_hot > 0.0;
  SolveOptions solve;
  solve.samples_per_segment = 1;
  solve.cross_check = dissipative;

  double worst_residual = 0.0;
  double worst_entropy = std::numeric_limits<double>::infinity();
  double worst_dual = 0.0;
  std::string failure;
  for (double tau : taus) {
    try {
      const LimitCycle lc = solve_limit_cycle(params.with_tau(tau), solve);
      const Heats h = heats(lc);
      worst_residual = std::max(worst_residual, std::abs(h.first_law_residual));
      worst_entropy = std::min(worst_entropy, entropy_production(h.q_cold, h.q_hot, params));
      worst_dual = std::max(worst_dual, lc.iteration_discrepancy);
    } catch (const std::exception& e) {
      failure = fmt::format("tau = {}: {}", tau, e.what());
      break;
    }
  }
  if (!failure.empty()) {
    for (const char* name : {"first_law", "second_law", "limit_cycle_dual_solution"}) {
      results.push_back({name, CheckStatus::fail, failure});
    }
    return results;
  }
  results.push_back({"first_law", worst_residual < 1e-9 ? CheckStatus::pass : CheckStatus::fail,
                     fmt::format("{} cycles, max |q_c + q_h + w| = {:.3e}", taus.size(), worst_residual)});
  results.push_back({"second_law", worst_entropy >= -1e-9 ? CheckStatus::pass : CheckStatus::fail,
                     fmt::format("min entropy production {:.3e}", worst_entropy)});
  if (dissipative) {
    results.push_back({"limit_cycle_dual_solution",
                       worst_dual <= 1e-6 ? CheckStatus::pass : CheckStatus::fail,
                       fmt::format("max eigenvector/iteration gap {:.3e}", worst_dual)});
  } else {
    results.push_back({"limit_cycle_dual_solution", CheckStatus::not_applicable,
                       "a decoupled bath leaves the fixed point non-unique"});
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::fail; });
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    const char* tag = r.status == CheckStatus::pass ? "PASS"
                      : r.status == CheckStatus::fail ? "FAIL"
                                                      : "N/A ";
    os << fmt::format("{}  {:<36} {}\n", tag, r.name, r.detail);
  }
}

}  // namespace otto

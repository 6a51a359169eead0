// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "otto/atlas.hpp"
#include "otto/ode_oracle.hpp"
#include "support.hpp"

using namespace otto;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double cooling_power(double tau, bool dephase = false) {
  CycleParams p = paper_family(tau);
  p.dephase_at_boundaries = dephase;
  const LimitCycle lc = solve_limit_cycle(p);
  return heats(lc).q_cold / tau;
}

SweepSpec linear_spec(double lo, double hi, int n) {
  SweepSpec s;
  s.base = paper_family();
  s.taus = make_grid(lo, hi, n, Spacing::linear);
  return s;
}

double state_gap(const StateVector& a, const StateVector& b) {
  return std::max({std::abs(a.e_val - b.e_val), std::abs(a.l_val - b.l_val),
                   std::abs(a.c_val - b.c_val), std::abs(a.d_val - b.d_val)});
}

Outcome quantization_landmark() {
  const auto t0 = std::chrono::steady_clock::now();
  const CycleParams p = paper_family();
  const double closed = quantization_time(p, 0.5);
  const double found = quantization_time_root_find(p, 0.5);
  const double elapsed = seconds_since(t0);
  const bool pass = std::abs(closed - 0.380) <= 0.005 && std::abs(closed - found) < 1e-6 && elapsed < 1.0;
  return {pass, format("tau_a = %.6f (0.380 +- 0.005), |formula - root-find| = %.2e, %.3f s", closed,
                       std::abs(closed - found), elapsed)};
}

Outcome classification_pattern() {
  const auto t0 = std::chrono::steady_clock::now();
  const char expected[] = "++++----++++";
  std::string got;
  for (double tau : test::kPaperTaus) got += cooling_power(tau) > 0.0 ? '+' : '-';
  const double elapsed = seconds_since(t0);
  return {got == expected && elapsed < 10.0,
          format("signs a..l = %s (expected %s), %.3f s", got.c_str(), expected, elapsed)};
}

Outcome cooling_magnitudes() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool within = true;
  std::vector<double> values;
  for (int i = 0; i < 4; ++i) {
    const double v = cooling_power(test::kPaperTaus[static_cast<std::size_t>(i)]);
    const double ref = test::kPaperCooling[static_cast<std::size_t>(i)];
    const double rel = std::abs(v / ref - 1.0);
    within = within && rel <= 0.25;
    values.push_back(v);
    detail += format("%c %.4e (%+.1f%%)  ", 'a' + i, v, 100.0 * (v / ref - 1.0));
  }
  const bool ordered = std::is_sorted(values.rbegin(), values.rend()) &&
                       std::adjacent_find(values.begin(), values.end()) == values.end();
  const double elapsed = seconds_since(t0);
  return {within && ordered && elapsed < 10.0,
          detail + format("ordered %s, %.3f s", ordered ? "yes" : "no", elapsed)};
}

Outcome transition_brackets() {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepSpec spec = linear_spec(0.1, 1.1, 200);
  const TransitionReport t = find_transitions(run_sweep(spec), spec.base);
  const double elapsed = seconds_since(t0);
  if (t.brackets.size() != 2) {
    return {false, format("expected 2 crossings, found %zu", t.brackets.size())};
  }
  const double low = t.brackets[0].tau_star, high = t.brackets[1].tau_star;
  const bool pass = high > 0.8168 && high < 0.8687 && low > 0.4826 && low < 0.7004 && elapsed < 60.0 &&
                    t.brackets[1].power_lo < 0.0 && t.brackets[1].power_hi > 0.0;
  return {pass, format("R->S at tau* = %.6f in (0.8168, 0.8687), S->R at tau* = %.6f in (0.4826, 0.7004), %.2f s",
                       high, low, elapsed)};
}

Outcome geometry_flip() {
  const Geometry a = classify_geometry(solve_limit_cycle(paper_family(test::kPaperTaus[0])));
  const Geometry l = classify_geometry(solve_limit_cycle(paper_family(test::kPaperTaus[11])));
  const GeometryAnalysis g = analyze_geometry(solve_limit_cycle(paper_family(test::kPaperTaus[6])));

  const SweepSpec spec = linear_spec(0.1, 1.1, 200);
  const TransitionReport t = find_transitions(run_sweep(spec), spec.base);
  const bool ratio_in_window =
      t.tau_min_coherence_ratio && t.in_short_circuit_window(*t.tau_min_coherence_ratio);
  const bool pass = a == Geometry::concave && l == Geometry::convex && g.coherence_spread < 0.1 &&
                    ratio_in_window;
  return {pass, format("a %s, l %s, g coherence std/mean %.4f, ratio minimum at tau = %.4f %s window",
                       std::string(to_string(a)).c_str(), std::string(to_string(l)).c_str(),
                       g.coherence_spread, t.tau_min_coherence_ratio.value_or(NAN),
                       ratio_in_window ? "inside" : "outside")};
}

Outcome small_action() {
  const double p3 = cooling_power(1e-3), p2 = cooling_power(1e-2);
  const bool plateau = p3 > 0.0 && p2 > 0.0 && std::abs(p3 / p2 - 1.0) < 0.05;
  const double d3 = cooling_power(1e-3, true);
  const bool dephased = std::abs(d3) < 1e-8;
  return {plateau && dephased,
          format("(a) Q_c/tau %.6e at 1e-3, %.6e at 1e-2, %s; (b) dephased Q_c/tau at 1e-3 = %.4e, "
                 "limit |.| < 1e-8, %s",
                 p3, p2, plateau ? "ok" : "fail", d3, dephased ? "ok" : "fail")};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CycleParams p = paper_family();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const StateVector s0 = test::random_physical_state(rng, p.energy_scale_hot());
    SegmentSpec spec;
    if (i % 2 == 0) {
      spec = IsochoreSpec{p.omega_cold + (p.omega_hot - p.omega_cold) * u(rng), p.j_coupling,
                          p.t_cold + (p.t_hot - p.t_cold) * u(rng), 0.5 * u(rng), 3.0 * u(rng)};
    } else {
      const bool up = u(rng) < 0.5;
      spec = AdiabatSpec{up ? p.omega_cold : p.omega_hot, up ? p.omega_hot : p.omega_cold,
                         p.j_coupling, 0.01 + 2.0 * u(rng)};
    }
    const SegmentPropagator prop = std::visit(
        [](const auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, IsochoreSpec>) {
            return isochore_propagator(s);
          } else {
            return adiabat_propagator(s);
          }
        },
        spec);
    worst = std::max(worst, state_gap(prop.apply(s0), ode_oracle(spec, s0)));
  }
  return {worst < 1e-8, format("100 segments, max componentwise deviation %.3e (limit 1e-8)", worst)};
}

Outcome dual_solution() {
  double dual = 0.0, closure = 0.0;
  for (double tau : test::kPaperTaus) {
    const LimitCycle lc = solve_limit_cycle(paper_family(tau));
    dual = std::max(dual, lc.iteration_discrepancy);
    closure = std::max({closure, state_gap(lc.corners[4], lc.anchor),
                        state_gap(lc.trajectory.back().state, lc.anchor)});
  }
  return {dual <= 1e-6 && closure < 1e-9,
          format("max eigenvector/iteration gap %.3e (1e-6), max closure %.3e (1e-9)", dual, closure)};
}

Outcome thermodynamic_laws() {
  std::vector<double> taus(test::kPaperTaus.begin(), test::kPaperTaus.end());
  for (double t : make_grid(0.1, 1.1, 200, Spacing::linear)) taus.push_back(t);
  for (double t : make_grid(1e-3, 1.2, 200, Spacing::log)) taus.push_back(t);
  double residual = 0.0, entropy = INFINITY, gap = -INFINITY;
  for (double tau : taus) {
    const LimitCycle lc = solve_limit_cycle(paper_family(tau));
    const Heats h = heats(lc);
    residual = std::max(residual, std::abs(h.first_law_residual));
    entropy = std::min(entropy, entropy_production(h.q_cold, h.q_hot, lc.params));
    for (const CyclePoint& pt : lc.trajectory) gap = std::max(gap, pt.s_vn - pt.s_e);
  }
  return {residual < 1e-9 && entropy >= -1e-9 && gap <= 0.0,
          format("%zu cycles: max |first-law residual| %.3e, min dS_u %.3e, max S_VN - S_E %.3e",
                 taus.size(), residual, entropy, gap)};
}

Outcome dynamical_temperature() {
  int refrigerators = 0;
  bool cold_ok = true, hot_ok = true;
  double cold_max = -INFINITY, hot_min = INFINITY;
  for (double tau : test::kPaperTaus) {
    const LimitCycle lc = solve_limit_cycle(paper_family(tau));
    if (make_report(lc).classification != Classification::refrigerator) continue;
    ++refrigerators;
    for (const TdynSample& s : dynamical_temperature_profile(lc, Stroke::cold_isochore)) {
      cold_ok = cold_ok && !s.singular && s.t_dyn < lc.params.t_cold;
      if (!s.singular) cold_max = std::max(cold_max, s.t_dyn);
    }
    for (const TdynSample& s : dynamical_temperature_profile(lc, Stroke::hot_isochore)) {
      hot_ok = hot_ok && !s.singular && s.t_dyn > lc.params.t_hot;
      if (!s.singular) hot_min = std::min(hot_min, s.t_dyn);
    }
  }
  const SweepSpec spec = linear_spec(0.1, 1.1, 200);
  const TransitionReport t = find_transitions(run_sweep(spec), spec.base);
  int flagged = 0;
  for (const Window& w : t.short_circuit_windows) {
    for (const TdynSingularity& s : locate_tdyn_singularities(spec.base, w)) flagged += s.flagged ? 1 : 0;
  }
  return {refrigerators == 8 && cold_ok && hot_ok && flagged > 0,
          format("%d refrigerators: max cold T_dyn %.4f (< 3.6), min hot T_dyn %.4f (> 4); "
                 "%d flagged singular cycle(s) in the short-circuit window",
                 refrigerators, cold_max, hot_min, flagged)};
}

Outcome lambda2_trend() {
  std::vector<double> taus(test::kPaperTaus.begin(), test::kPaperTaus.end());
  std::sort(taus.begin(), taus.end());
  double worst = -INFINITY, prev = INFINITY;
  for (double tau : taus) {
    const double m = solve_limit_cycle(paper_family(tau)).lambda2.modulus;
    worst = std::max(worst, m - prev);
    prev = m;
  }
  return {worst <= 1e-9, format("largest increase of |lambda2| with tau: %.3e (slack 1e-9)", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"quantization landmark", quantization_landmark},
      {"classification pattern", classification_pattern},
      {"cooling-power magnitudes", cooling_magnitudes},
      {"transition brackets", transition_brackets},
      {"geometry flip", geometry_flip},
      {"small-action asymptote", small_action},
      {"oracle equivalence", oracle_equivalence},
      {"limit-cycle dual solution", dual_solution},
      {"thermodynamic laws", thermodynamic_laws},
      {"dynamical temperature", dynamical_temperature},
      {"lambda2 trend", lambda2_trend}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] criterion %zu, %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

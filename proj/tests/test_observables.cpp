#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "otto/errors.hpp"
#include "otto/observables.hpp"
#include "support.hpp"

using namespace otto;

namespace {

CycleParams decoupled(double tau) {
  CycleParams p = paper_family(tau);
  p.k_down_cold = 0.0;
  p.k_down_hot = 0.0;
  return p;
}

}  // namespace

TEST_CASE("decoupled baths exchange no heat") {
  const LimitCycle lc = solve_limit_cycle(decoupled(0.7));
  const Heats h = heats(lc);
  CHECK(h.q_cold == 0.0);
  CHECK(h.q_hot == 0.0);
  CHECK(entropy_production(h.q_cold, h.q_hot, lc.params) == 0.0);
  CHECK(classify(h.q_cold, h.q_hot) == Classification::other);
}

TEST_CASE("heat bookkeeping on cycle b") {
  const LimitCycle lc = solve_limit_cycle(paper_family(0.96527));
  const Heats h = heats(lc);
  CHECK(h.q_cold == doctest::Approx(lc.corners[1].e_val - lc.corners[0].e_val));
  CHECK(h.q_hot == doctest::Approx(lc.corners[3].e_val - lc.corners[2].e_val));
  CHECK(h.work == doctest::Approx(h.work_compression + h.work_expansion));
  CHECK(std::abs(h.first_law_residual) < 1e-9 * std::max({std::abs(h.q_cold), std::abs(h.q_hot), 1e-12}));
  CHECK(h.q_cold / 0.96527 == doctest::Approx(1.445e-4).epsilon(0.25));
  CHECK(h.q_cold > 0.0);
  CHECK(h.q_hot < 0.0);
  CHECK(h.work > 0.0);
}

TEST_CASE("cycle f is a short circuit") {
  const LimitCycle lc = solve_limit_cycle(paper_family(0.772216));
  const CycleReport r = make_report(lc);
  CHECK(r.cooling_power < 0.0);
  CHECK(r.classification == Classification::short_circuit);
  CHECK(r.entropy_production > 0.0);
  // Both bath-side terms are positive in a short circuit.
  CHECK(-r.heat.q_hot / lc.params.t_hot > 0.0);
  CHECK(-r.heat.q_cold / lc.params.t_cold > 0.0);
}

TEST_CASE("a cycle whose trajectory does not close is rejected") {
  LimitCycle lc = solve_limit_cycle(paper_family(0.96527));
  lc.corners[4].e_val += 1e-3;
  CHECK_THROWS_AS(heats(lc), StaleCycleError);
}

TEST_CASE("classification follows the heat signs") {
  CHECK(classify(1.0, -2.0) == Classification::refrigerator);
  CHECK(classify(-1.0, -2.0) == Classification::short_circuit);
  CHECK(classify(-1.0, 2.0) == Classification::engine);
  CHECK(classify(1.0, 2.0) == Classification::other);
  CHECK(classify(0.0, 0.0) == Classification::other);
  CHECK(code(Classification::refrigerator) == 'R');
  CHECK(code(Classification::short_circuit) == 'S');
  CHECK(code(Classification::engine) == 'E');
  CHECK(code(Classification::other) == 'O');
  CHECK(to_string(Classification::short_circuit) == "short_circuit");
}

TEST_CASE("entropy production uses bath-side signs") {
  const CycleParams p = paper_family();
  CHECK(entropy_production(1.0, -2.0, p) == doctest::Approx(2.0 / 4.0 - 1.0 / 3.6));
  CHECK(entropy_production(-1.0, -1.0, p) == doctest::Approx(1.0 / 4.0 + 1.0 / 3.6));
}

TEST_CASE("laws hold across the studied cycle times") {
  for (double tau : test::kPaperTaus) {
    const LimitCycle lc = solve_limit_cycle(paper_family(tau));
    const CycleReport r = make_report(lc);
    const Heats& h = r.heat;
    CHECK(std::abs(h.first_law_residual) < 1e-9 * std::max({std::abs(h.q_cold), std::abs(h.q_hot), 1e-12}));
    CHECK(r.entropy_production >= -1e-9);
    CHECK((r.classification == Classification::refrigerator) == (r.cooling_power > 0.0 && h.q_hot < 0.0));
    for (const CyclePoint& pt : lc.trajectory) {
      CHECK(pt.s_vn <= pt.s_e + 1e-12);
      CHECK(pt.energy_scale == doctest::Approx(energy_scale(pt.omega, lc.params.j_coupling)));
    }
  }
}

TEST_CASE("dynamical temperature approaches the bath temperature") {
  CycleParams p = paper_family();
  p.fractions = {0.05, 0.45, 0.05, 0.45};
  const double gamma = segment_specs(p).cold.gamma();
  auto end_error = [&](double relaxations) {
    p.tau_cycle = relaxations / gamma / p.fractions.c;
    const auto prof = dynamical_temperature_profile(solve_limit_cycle(p), Stroke::cold_isochore);
    REQUIRE_FALSE(prof.back().singular);
    return std::abs(prof.back().t_dyn - p.t_cold);
  };
  const double early = end_error(2.0);
  const double late = end_error(8.0);
  CHECK(late < early);
  CHECK(late < 1e-3 * p.t_cold);
}

TEST_CASE("dynamical temperature on a refrigerator cycle") {
  const LimitCycle lc = solve_limit_cycle(paper_family(0.96527));
  const auto cold = dynamical_temperature_profile(lc, Stroke::cold_isochore);
  const auto hot = dynamical_temperature_profile(lc, Stroke::hot_isochore);
  CHECK(cold.size() == 201u);
  for (const TdynSample& s : cold) {
    REQUIRE_FALSE(s.singular);
    CHECK(s.t_dyn < lc.params.t_cold);
    CHECK(s.de_dt > 0.0);  // heat flows in from the cold bath
  }
  for (const TdynSample& s : hot) {
    REQUIRE_FALSE(s.singular);
    CHECK(s.t_dyn > lc.params.t_hot);
  }
}

TEST_CASE("entropy rate converges under step halving") {
  SolveOptions coarse, fine;
  coarse.samples_per_segment = 200;
  fine.samples_per_segment = 400;
  const auto a = dynamical_temperature_profile(solve_limit_cycle(paper_family(0.96527), coarse),
                                               Stroke::cold_isochore);
  const auto b = dynamical_temperature_profile(solve_limit_cycle(paper_family(0.96527), fine),
                                               Stroke::cold_isochore);
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    CHECK(a[i].time == doctest::Approx(b[2 * i].time));
    CHECK(a[i].ds_dt == doctest::Approx(b[2 * i].ds_dt).epsilon(1e-6));
  }
}

TEST_CASE("dynamical temperature preconditions") {
  SolveOptions sparse;
  sparse.samples_per_segment = 3;
  const LimitCycle lc = solve_limit_cycle(paper_family(0.96527), sparse);
  CHECK_THROWS_AS(dynamical_temperature_profile(lc, Stroke::cold_isochore), ResolutionError);
  const LimitCycle dense = solve_limit_cycle(paper_family(0.96527));
  CHECK_THROWS_AS(dynamical_temperature_profile(dense, Stroke::compression), std::invalid_argument);
  // A huge threshold flags every point and returns no spurious values.
  const auto all = dynamical_temperature_profile(dense, Stroke::cold_isochore, 1e9);
  for (const TdynSample& s : all) {
    CHECK(s.singular);
    CHECK(std::isnan(s.t_dyn));
  }
}

TEST_CASE("energy to coherence ratio") {
  CycleParams dephased = paper_family(0.5);
  dephased.dephase_at_boundaries = true;
  const CoherenceRatio none = energy_coherence_ratio(solve_limit_cycle(dephased));
  CHECK(none.infinite);

  const CoherenceRatio b = energy_coherence_ratio(solve_limit_cycle(paper_family(0.96527)));
  CHECK_FALSE(b.infinite);
  CHECK(b.value < 0.0);
  CHECK(b.magnitude() == doctest::Approx(-b.value));

  // Slow cycles generate little coherence; the ratio grows without bound.
  const double r10 = energy_coherence_ratio(solve_limit_cycle(paper_family(10.0))).magnitude();
  const double r1000 = energy_coherence_ratio(solve_limit_cycle(paper_family(1000.0))).magnitude();
  CHECK(r1000 > 100.0 * r10);

  // Sudden cycles: a finite asymptote.
  const double r3 = energy_coherence_ratio(solve_limit_cycle(paper_family(1e-3))).magnitude();
  const double r2 = energy_coherence_ratio(solve_limit_cycle(paper_family(1e-2))).magnitude();
  CHECK(std::isfinite(r3));
  CHECK(r3 == doctest::Approx(r2).epsilon(1e-3));
}

TEST_CASE("geometry of the cycle family") {
  const GeometryAnalysis a = analyze_geometry(solve_limit_cycle(paper_family(1.013534)));
  CHECK(a.geometry == Geometry::concave);
  CHECK(a.chord_deviation_compression > 0.0);
  CHECK(a.chord_deviation_expansion > 0.0);

  const GeometryAnalysis l = analyze_geometry(solve_limit_cycle(paper_family(0.12065875)));
  CHECK(l.geometry == Geometry::convex);
  CHECK(l.chord_deviation_compression < 0.0);

  const GeometryAnalysis g = analyze_geometry(solve_limit_cycle(paper_family(0.735444)));
  CHECK(g.coherence_spread < 0.1);
  CHECK(to_string(Geometry::indeterminate) == "indeterminate");
}

TEST_CASE("geometry needs both criteria to agree") {
  // Two samples per stroke leave no interior point to judge.
  SolveOptions sparse;
  sparse.samples_per_segment = 1;
  CHECK(classify_geometry(solve_limit_cycle(paper_family(1.013534), sparse)) == Geometry::indeterminate);
}

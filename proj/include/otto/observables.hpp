#pragma once

// Heats, entropy production, dynamical temperature, energy/coherence ratio
// and cycle geometry evaluated on a solved limit cycle.
//
// Sign convention: heats are positive when energy flows into the working
// medium. Entropy production uses the bath side, -q_hot/T_h - q_cold/T_c.

#include <string_view>
#include <vector>

#include "otto/limit_cycle.hpp"

namespace otto {

struct Heats {
  double q_cold = 0.0;            // E(B) - E(A)
  double q_hot = 0.0;             // E(D) - E(C)
  double work_compression = 0.0;  // E(C) - E(B)
  double work_expansion = 0.0;    // E(A') - E(D)
  double work = 0.0;              // work_compression + work_expansion
  /// q_cold + q_hot + work; zero for a closed cycle.
  double first_law_residual = 0.0;
};

/// Throws StaleCycleError when the corners do not close on the anchor.
Heats heats(const LimitCycle& lc);

double entropy_production(double q_cold, double q_hot, const CycleParams& params);

enum class Classification { refrigerator, short_circuit, engine, other };

std::string_view to_string(Classification c);
/// One-letter code: R, S, E, O.
char code(Classification c);

/// refrigerator: q_cold > 0 and q_hot < 0. short_circuit: both < 0 (heat
/// deposited into both baths). engine: q_hot > 0 and q_cold < 0.
Classification classify(double q_cold, double q_hot);

struct TdynSample {
  double time = 0.0;
  double de_dt = 0.0;
  double ds_dt = 0.0;
  double t_dyn = 0.0;      // NaN at singular points
  double dt_dyn_dt = 0.0;  // NaN next to singular points
  bool singular = false;
};

inline constexpr double kTdynSingularThreshold = 1e-9;

/// T_dyn = (dE/dt) / (dS_E/dt) along an isochore. dE/dt comes from the
/// generator acting on the sampled state, dS_E/dt from second-order finite
/// differences on the uniform sample grid. Points with |dS_E/dt| < epsilon
/// are flagged instead of divided. Throws ResolutionError below 5 samples.
std::vector<TdynSample> dynamical_temperature_profile(const LimitCycle& lc, Stroke isochore,
                                                      double epsilon = kTdynSingularThreshold);

struct CoherenceRatio {
  double value = 0.0;  // E / sqrt(L^2 + C^2), signed
  bool infinite = false;
  double magnitude() const { return value < 0 ? -value : value; }
};

CoherenceRatio energy_coherence_ratio(const LimitCycle& lc, Corner at = Corner::A);

enum class Geometry { concave, convex, indeterminate };

std::string_view to_string(Geometry g);

struct GeometryAnalysis {
  Geometry geometry = Geometry::indeterminate;
  /// From S_E(Omega) against its chord on both adiabats.
  Geometry curvature_vote = Geometry::indeterminate;
  /// From the coherence at mid-adiabat against its values at the switch points.
  Geometry coherence_vote = Geometry::indeterminate;
  /// Mean of S_E - chord over interior samples; > 0 means concave.
  double chord_deviation_compression = 0.0;
  double chord_deviation_expansion = 0.0;
  /// std / mean of the coherence measure along the compression adiabat.
  double coherence_spread = 0.0;
};

GeometryAnalysis analyze_geometry(const LimitCycle& lc);
Geometry classify_geometry(const LimitCycle& lc);

struct CycleReport {
  Heats heat;
  double cooling_power = 0.0;  // q_cold / tau
  double entropy_production = 0.0;
  Classification classification = Classification::other;
  CoherenceRatio ratio_at_a;
  Geometry geometry = Geometry::indeterminate;
};

CycleReport make_report(const LimitCycle& lc);

}  // namespace otto

#pragma once

// Cycle-time sweeps at fixed stroke fractions, transition detection and the
// quantization landmarks.

#include <optional>
#include <string>
#include <vector>

#include "otto/limit_cycle.hpp"
#include "otto/observables.hpp"

namespace otto {

enum class Spacing { linear, log };

/// `count` points from lo to hi inclusive. count == 1 gives {lo}.
std::vector<double> make_grid(double lo, double hi, int count, Spacing spacing);

struct SweepSpec {
  CycleParams base;
  std::vector<double> taus;
  std::vector<double> landmarks{0.5, 1.0, 1.5};
  SolveOptions solve;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Grid strictly increasing and positive; base params valid.
  void validate() const;
};

struct SweepRecord {
  double tau_cycle = 0.0;
  double q_cold = 0.0;
  double q_hot = 0.0;
  double work = 0.0;
  double cooling_power = 0.0;
  double entropy_production = 0.0;
  double first_law_residual = 0.0;
  double lambda2_modulus = 0.0;
  double lambda2_phase = 0.0;
  Classification classification = Classification::other;
  Geometry geometry = Geometry::indeterminate;
  CoherenceRatio ratio_at_a;
  StateVector anchor;
  double iteration_discrepancy = 0.0;
  /// Empty on success; the solver's message otherwise.
  std::string error;

  bool ok() const { return error.empty(); }
};

/// Solves one cycle and condenses it into a record. Solver failures are
/// caught and stored in `error`.
SweepRecord evaluate_point(const CycleParams& params, const SolveOptions& options);

/// One record per grid point, in grid order regardless of thread count.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

struct Bracket {
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  double power_lo = 0.0;
  double power_hi = 0.0;
  /// Cooling-power zero refined by re-solving cycles.
  double tau_star = 0.0;
};

struct Window {
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  bool contains(double tau, double slack = 0.0) const {
    return tau >= tau_lo - slack && tau <= tau_hi + slack;
  }
};

struct TransitionReport {
  std::vector<Bracket> brackets;
  /// Runs of short-circuit records, bounded by the refined crossings.
  std::vector<Window> short_circuit_windows;
  std::optional<double> tau_max_entropy_production;
  std::optional<double> tau_min_cooling_power;
  std::optional<double> tau_min_coherence_ratio;
  /// Midpoint between the largest convex and the smallest concave cycle
  /// time above it.
  std::optional<double> tau_geometry_flip;
  /// |flip - cycle time of the l = 1/2 landmark|.
  std::optional<double> flip_distance_to_half_landmark;

  bool in_short_circuit_window(double tau, double slack = 0.0) const;
};

/// Brackets every cooling-power sign change between consecutive successful
/// records and bisects it to `relative_tolerance`. Throws DomainError for
/// fewer than 3 records.
TransitionReport find_transitions(const std::vector<SweepRecord>& records, const CycleParams& base,
                                  const SolveOptions& options = {},
                                  double relative_tolerance = 1e-4);

struct Landmark {
  double l = 0.0;
  double tau_adiabat = 0.0;
  /// Cycle time whose expansion adiabat lasts tau_adiabat.
  double tau_cycle = 0.0;
  Classification classification = Classification::other;
  double cooling_power = 0.0;
  bool in_short_circuit_window = false;
  std::string error;
};

/// Landmarks for each l, classified by solving the cycle at tau_cycle. The
/// window test is widened by `slack` on both sides.
std::vector<Landmark> landmark_times(const CycleParams& params, const std::vector<double>& ls,
                                     const std::vector<Window>& windows = {}, double slack = 0.0,
                                     const SolveOptions& options = {});

struct TdynSingularity {
  Stroke stroke = Stroke::cold_isochore;
  double tau_cycle = 0.0;
  /// Time since A of the sample where dS_E/dt vanishes.
  double time = 0.0;
  double ds_dt = 0.0;
  bool flagged = false;
};

/// Looks for cycle times inside `window` where dS_E/dt at the middle of an
/// isochore changes sign, bisects each crossing and re-evaluates the T_dyn
/// profile there.
std::vector<TdynSingularity> locate_tdyn_singularities(const CycleParams& base, const Window& window,
                                                       const SolveOptions& options = {},
                                                       int scan_points = 24);

}  // namespace otto

#pragma once

// Global one-period propagator, its invariant vector (the limit cycle) and
// the sampled trajectory over one period.

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "otto/propagators.hpp"
#include "otto/working_medium.hpp"

namespace otto {

/// Strokes in execution order starting from point A.
enum class Stroke { cold_isochore = 0, compression = 1, hot_isochore = 2, expansion = 3 };

inline constexpr std::array<Stroke, 4> kStrokes{Stroke::cold_isochore, Stroke::compression,
                                                Stroke::hot_isochore, Stroke::expansion};

std::string_view to_string(Stroke s);
bool is_isochore(Stroke s);

/// Cycle corners: A starts the cold isochore, B the compression, C the hot
/// isochore, D the expansion.
enum class Corner { A = 0, B = 1, C = 2, D = 3 };

struct CycleSegments {
  IsochoreSpec cold;
  AdiabatSpec compression;
  IsochoreSpec hot;
  AdiabatSpec expansion;
};

CycleSegments segment_specs(const CycleParams& params);

/// Propagator of one stroke over the first `t` time units of it.
SegmentPropagator stroke_propagator(const CycleSegments& segments, Stroke stroke, double t);

/// Field value at time `t` into a stroke.
double stroke_omega(const CycleSegments& segments, Stroke stroke, double t);

double stroke_duration(const CycleParams& params, Stroke stroke);

/// diag(1, 0, 0, 1, 1): removes L and C.
Mat5 dephasing_projector();

struct GlobalPropagator {
  CycleParams params;
  /// U_hc U_h U_ch U_c, anchored at A. Dephasing projectors are inserted
  /// after every stroke when the switch is on.
  Mat5 matrix = Mat5::Identity();
  /// Stroke propagators in execution order (c, ch, h, hc).
  std::array<SegmentPropagator, 4> segments;
  /// True when every pair of consecutive stroke propagators commutes; such
  /// a cycle produces no power.
  bool all_segments_commute = false;
};

GlobalPropagator assemble_global(const CycleParams& params);

/// The cyclically permuted product anchored at the start of `anchor`.
Mat5 anchored_product(const GlobalPropagator& g, Stroke anchor);

struct Eigenvalue {
  std::complex<double> value;
  double modulus = 0.0;
  double phase = 0.0;
};

/// Eigenvalues sorted by descending modulus, with the eigenvalue closest to
/// 1 placed first.
std::vector<Eigenvalue> spectrum(const Mat5& m);

/// Invariant vector at eigenvalue 1 from a minimum-norm least-squares solve
/// of (U - I) v = 0 on the 4x4 block, identity component pinned to 1.
Vec5 invariant_vector(const Mat5& m);

struct IterationResult {
  Vec5 anchor = Vec5::Zero();
  long cycles = 0;        // plain iterations performed
  int squarings = 0;      // repeated-squaring steps after the cap
  bool converged = false;
};

/// Applies `m` repeatedly from `start` until successive anchors differ by
/// less than `tolerance` (max norm). After `max_iterations` plain cycles it
/// switches to repeated squaring of `m` when `allow_acceleration`.
IterationResult iterate_to_limit(const Mat5& m, const Vec5& start, long max_iterations,
                                 double tolerance, bool allow_acceleration);

struct SolveOptions {
  int samples_per_segment = 200;
  bool cross_check = true;
  long max_iterations = 1'000'000;
  double iteration_tolerance = 1e-12;
  double agreement_tolerance = 1e-6;
  bool allow_acceleration = true;
};

struct CyclePoint {
  double time = 0.0;  // since point A
  Stroke stroke = Stroke::cold_isochore;
  int sample = 0;     // index within the stroke
  double omega = 0.0;
  double energy_scale = 0.0;
  StateVector state;
  double s_vn = 0.0;
  double s_e = 0.0;
  double coherence = 0.0;
};

struct LimitCycle {
  CycleParams params;
  StateVector anchor;
  /// States at A, B, C, D and back at A after one period (index 4).
  std::array<StateVector, 5> corners;
  Eigenvalue lambda2;
  /// -ln|lambda2| / tau_cycle.
  double gamma = 0.0;
  std::vector<Eigenvalue> eigenvalues;
  std::vector<CyclePoint> trajectory;
  /// Max-norm distance between eigenvector and iterated anchors (0 when
  /// the cross-check is disabled).
  double iteration_discrepancy = 0.0;
  long iteration_cycles = 0;
  int iteration_squarings = 0;
  bool all_segments_commute = false;

  const StateVector& corner(Corner c) const { return corners[static_cast<int>(c)]; }
  /// Trajectory points belonging to one stroke.
  std::vector<CyclePoint> stroke_points(Stroke s) const;
};

/// Builds a CyclePoint with entropies and coherence from a state.
CyclePoint make_cycle_point(double time, Stroke stroke, int sample, double omega,
                            double j_coupling, const StateVector& state);

LimitCycle solve_limit_cycle(const GlobalPropagator& g, const SolveOptions& options = {});
LimitCycle solve_limit_cycle(const CycleParams& params, const SolveOptions& options = {});

}  // namespace otto

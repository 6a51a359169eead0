#include "otto/limit_cycle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "otto/errors.hpp"

namespace otto {
namespace {

bool commutes(const Mat5& a, const Mat5& b) {
  const double scale = std::max(1.0, a.norm() * b.norm());
  return (a * b - b * a).norm() <= 1e-12 * scale;
}

double max_abs(const Vec5& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

std::string_view to_string(Stroke s) {
  switch (s) {
    case Stroke::cold_isochore: return "cold_isochore";
    case Stroke::compression: return "compression";
    case Stroke::hot_isochore: return "hot_isochore";
    case Stroke::expansion: return "expansion";
  }
  return "unknown";
}

bool is_isochore(Stroke s) { return s == Stroke::cold_isochore || s == Stroke::hot_isochore; }

CycleSegments segment_specs(const CycleParams& p) {
  CycleSegments s;
  s.cold = {p.omega_cold, p.j_coupling, p.t_cold, p.k_down_cold, p.duration_cold()};
  s.compression = {p.omega_cold, p.omega_hot, p.j_coupling, p.duration_compression()};
  s.hot = {p.omega_hot, p.j_coupling, p.t_hot, p.k_down_hot, p.duration_hot()};
  s.expansion = {p.omega_hot, p.omega_cold, p.j_coupling, p.duration_expansion()};
  return s;
}

double stroke_duration(const CycleParams& p, Stroke stroke) {
  switch (stroke) {
    case Stroke::cold_isochore: return p.duration_cold();
    case Stroke::compression: return p.duration_compression();
    case Stroke::hot_isochore: return p.duration_hot();
    case Stroke::expansion: return p.duration_expansion();
  }
  return 0.0;
}

SegmentPropagator stroke_propagator(const CycleSegments& seg, Stroke stroke, double t) {
  auto adiabat = [t](const AdiabatSpec& spec) {
    if (t <= 0.0) {
      SegmentPropagator p = identity_propagator();
      p.kind = SegmentKind::adiabat;
      return p;
    }
    return adiabat_propagator(t >= spec.duration ? spec : spec.truncated(t));
  };
  switch (stroke) {
    case Stroke::cold_isochore: return isochore_propagator(seg.cold.with_duration(t));
    case Stroke::compression: return adiabat(seg.compression);
    case Stroke::hot_isochore: return isochore_propagator(seg.hot.with_duration(t));
    case Stroke::expansion: return adiabat(seg.expansion);
  }
  return identity_propagator();
}

double stroke_omega(const CycleSegments& seg, Stroke stroke, double t) {
  switch (stroke) {
    case Stroke::cold_isochore: return seg.cold.omega;
    case Stroke::compression: return seg.compression.omega_at(t);
    case Stroke::hot_isochore: return seg.hot.omega;
    case Stroke::expansion: return seg.expansion.omega_at(t);
  }
  return 0.0;
}

Mat5 dephasing_projector() {
  Mat5 p = Mat5::Identity();
  p(1, 1) = 0.0;
  p(2, 2) = 0.0;
  return p;
}

GlobalPropagator assemble_global(const CycleParams& params) {
  params.validate();
  const CycleSegments seg = segment_specs(params);
  GlobalPropagator g;
  g.params = params;
  const Mat5 projector = params.dephase_at_boundaries ? dephasing_projector() : Mat5::Identity();
  for (Stroke s : kStrokes) {
    SegmentPropagator p = stroke_propagator(seg, s, stroke_duration(params, s));
    p.matrix = projector * p.matrix;
    g.segments[static_cast<int>(s)] = p;
    g.matrix = p.matrix * g.matrix;
  }
  bool all = true;
  for (int k = 0; k < 4; ++k) {
    all = all && commutes(g.segments[k].matrix, g.segments[(k + 1) % 4].matrix);
  }
  g.all_segments_commute = all;
  return g;
}

Mat5 anchored_product(const GlobalPropagator& g, Stroke anchor) {
  Mat5 m = Mat5::Identity();
  const int first = static_cast<int>(anchor);
  for (int k = 0; k < 4; ++k) m = g.segments[(first + k) % 4].matrix * m;
  return m;
}

std::vector<Eigenvalue> spectrum(const Mat5& m) {
  Eigen::EigenSolver<Mat5> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed on propagator");
  std::vector<Eigenvalue> out;
  for (int i = 0; i < 5; ++i) {
    const std::complex<double> z = solver.eigenvalues()(i);
    out.push_back({z, std::abs(z), std::arg(z)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Eigenvalue& a, const Eigenvalue& b) { return a.modulus > b.modulus; });
  auto unit = std::min_element(out.begin(), out.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    return std::abs(a.value - 1.0) < std::abs(b.value - 1.0);
  });
  std::rotate(out.begin(), unit, unit + 1);
  return out;
}

Vec5 invariant_vector(const Mat5& m) {
  const Eigen::Matrix4d block = m.topLeftCorner<4, 4>() - Eigen::Matrix4d::Identity();
  const Eigen::Vector4d rhs = -m.topRightCorner<4, 1>();
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix4d> cod(block);
  Eigen::Vector4d v = cod.solve(rhs);
  v += cod.solve(rhs - block * v);
  Vec5 out;
  out << v, 1.0;
  return out;
}

IterationResult iterate_to_limit(const Mat5& m, const Vec5& start, long max_iterations,
                                 double tolerance, bool allow_acceleration) {
  IterationResult r;
  Vec5 v = start;
  for (long n = 0; n < max_iterations; ++n) {
    const Vec5 next = m * v;
    const double diff = max_abs(next - v);
    v = next;
    ++r.cycles;
    if (diff < tolerance) {
      r.anchor = v;
      r.converged = true;
      return r;
    }
  }
  if (allow_acceleration) {
    // Power iteration by repeated squaring: step k applies m^(2^k).
    Mat5 power = m;
    for (int k = 1; k <= 62; ++k) {
      power = power * power;
      power.row(4) << 0.0, 0.0, 0.0, 0.0, 1.0;
      const Vec5 next = power * v;
      const double diff = max_abs(next - v);
      v = next;
      ++r.squarings;
      if (diff < tolerance) {
        r.anchor = v;
        r.converged = true;
        return r;
      }
    }
  }
  r.anchor = v;
  return r;
}

std::vector<CyclePoint> LimitCycle::stroke_points(Stroke s) const {
  std::vector<CyclePoint> out;
  for (const CyclePoint& p : trajectory) {
    if (p.stroke == s) out.push_back(p);
  }
  return out;
}

CyclePoint make_cycle_point(double time, Stroke stroke, int sample, double omega,
                            double j_coupling, const StateVector& state) {
  CyclePoint pt;
  pt.time = time;
  pt.stroke = stroke;
  pt.sample = sample;
  pt.omega = omega;
  pt.energy_scale = energy_scale(omega, j_coupling);
  pt.state = state;
  const DensityMatrix rho = reconstruct_density(state, pt.energy_scale);
  pt.s_vn = von_neumann_entropy(rho);
  pt.s_e = energy_entropy(rho);
  pt.coherence = coherence_measure(state, pt.energy_scale);
  return pt;
}

LimitCycle solve_limit_cycle(const GlobalPropagator& g, const SolveOptions& options) {
  const CycleParams& params = g.params;
  LimitCycle lc;
  lc.params = params;
  lc.all_segments_commute = g.all_segments_commute;
  lc.eigenvalues = spectrum(g.matrix);
  lc.lambda2 = lc.eigenvalues[1];
  lc.gamma = lc.lambda2.modulus > 0.0 ? -std::log(lc.lambda2.modulus) / params.tau_cycle
                                      : std::numeric_limits<double>::infinity();

  const Vec5 anchor = invariant_vector(g.matrix);
  const double fixed_residual = max_abs(g.matrix * anchor - anchor);
  if (fixed_residual > 1e-10 * std::max(1.0, max_abs(anchor))) {
    throw NumericError("invariant vector does not satisfy U v = v (residual " +
                       std::to_string(fixed_residual) + ")");
  }

  if (options.cross_check) {
    Vec5 start = Vec5::Zero();
    start(4) = 1.0;
    const IterationResult it = iterate_to_limit(g.matrix, start, options.max_iterations,
                                                options.iteration_tolerance,
                                                options.allow_acceleration);
    if (!it.converged) {
      throw SlowConvergenceError("limit-cycle iteration did not converge", lc.lambda2.modulus);
    }
    lc.iteration_cycles = it.cycles;
    lc.iteration_squarings = it.squarings;
    lc.iteration_discrepancy = max_abs(it.anchor - anchor);
    if (lc.iteration_discrepancy > options.agreement_tolerance) {
      throw NumericError("eigenvector and iterated anchors disagree by " +
                         std::to_string(lc.iteration_discrepancy));
    }
  }

  lc.anchor = StateVector::from_vector(anchor);
  Vec5 x = anchor;
  lc.corners[0] = lc.anchor;
  for (int k = 0; k < 4; ++k) {
    x = g.segments[k].matrix * x;
    x(4) = 1.0;
    lc.corners[k + 1] = StateVector::from_vector(x);
  }

  const CycleSegments seg = segment_specs(params);
  const int n = std::max(1, options.samples_per_segment);
  double offset = 0.0;
  Vec5 start = anchor;
  for (Stroke s : kStrokes) {
    const double d = stroke_duration(params, s);
    if (d > 0.0) {
      for (int i = 0; i <= n; ++i) {
        const double t = d * static_cast<double>(i) / n;
        Vec5 state = stroke_propagator(seg, s, t).matrix * start;
        state(4) = 1.0;
        lc.trajectory.push_back(make_cycle_point(offset + t, s, i, stroke_omega(seg, s, t),
                                                 params.j_coupling,
                                                 StateVector::from_vector(state)));
      }
    }
    start = g.segments[static_cast<int>(s)].matrix * start;
    start(4) = 1.0;
    offset += d;
  }
  return lc;
}

LimitCycle solve_limit_cycle(const CycleParams& params, const SolveOptions& options) {
  return solve_limit_cycle(assemble_global(params), options);
}

}  // namespace otto

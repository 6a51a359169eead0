#include "otto/observables.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "otto/errors.hpp"

namespace otto {
namespace {

constexpr double kHeatZero = 1e-14;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Second-order derivative of uniformly spaced samples.
std::vector<double> differentiate(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n);
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
  return d;
}

double chord_deviation(const std::vector<CyclePoint>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  const CyclePoint& a = pts.front();
  const CyclePoint& b = pts.back();
  const double span = b.energy_scale - a.energy_scale;
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double chord = a.s_e + (b.s_e - a.s_e) * (pts[i].energy_scale - a.energy_scale) / span;
    total += pts[i].s_e - chord;
  }
  return total / static_cast<double>(n - 2);
}

Geometry curvature_of(double deviation) {
  if (deviation > 1e-12) return Geometry::concave;
  if (deviation < -1e-12) return Geometry::convex;
  return Geometry::indeterminate;
}

Geometry coherence_shape(const std::vector<CyclePoint>& pts) {
  if (pts.size() < 3) return Geometry::indeterminate;
  const double first = pts.front().coherence;
  const double last = pts.back().coherence;
  const double mid = pts[pts.size() / 2].coherence;
  if (mid > std::max(first, last)) return Geometry::concave;
  if (mid < std::min(first, last)) return Geometry::convex;
  return Geometry::indeterminate;
}

Geometry agree(Geometry a, Geometry b) { return a == b ? a : Geometry::indeterminate; }

}  // namespace

Heats heats(const LimitCycle& lc) {
  const StateVector& a = lc.corners[0];
  const StateVector& closed = lc.corners[4];
  const double scale = std::max({1.0, std::abs(a.e_val), std::abs(a.l_val), std::abs(a.c_val),
                                 std::abs(a.d_val)});
  const double gap = std::max({std::abs(closed.e_val - a.e_val), std::abs(closed.l_val - a.l_val),
                               std::abs(closed.c_val - a.c_val), std::abs(closed.d_val - a.d_val)});
  if (gap > 1e-9 * scale) throw StaleCycleError("limit cycle does not close on its anchor");

  Heats h;
  h.q_cold = lc.corners[1].e_val - lc.corners[0].e_val;
  h.work_compression = lc.corners[2].e_val - lc.corners[1].e_val;
  h.q_hot = lc.corners[3].e_val - lc.corners[2].e_val;
  h.work_expansion = lc.corners[4].e_val - lc.corners[3].e_val;
  h.work = h.work_compression + h.work_expansion;
  h.first_law_residual = h.q_cold + h.q_hot + h.work;
  return h;
}

double entropy_production(double q_cold, double q_hot, const CycleParams& params) {
  return -q_hot / params.t_hot - q_cold / params.t_cold;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::refrigerator: return "refrigerator";
    case Classification::short_circuit: return "short_circuit";
    case Classification::engine: return "engine";
    case Classification::other: return "other";
  }
  return "other";
}

char code(Classification c) {
  switch (c) {
    case Classification::refrigerator: return 'R';
    case Classification::short_circuit: return 'S';
    case Classification::engine: return 'E';
    case Classification::other: return 'O';
  }
  return 'O';
}

Classification classify(double q_cold, double q_hot) {
  if (q_cold > kHeatZero && q_hot < -kHeatZero) return Classification::refrigerator;
  if (q_cold < -kHeatZero && q_hot < -kHeatZero) return Classification::short_circuit;
  if (q_hot > kHeatZero && q_cold < -kHeatZero) return Classification::engine;
  return Classification::other;
}

std::vector<TdynSample> dynamical_temperature_profile(const LimitCycle& lc, Stroke stroke,
                                                      double epsilon) {
  if (!is_isochore(stroke)) {
    throw std::invalid_argument("dynamical temperature is defined on isochores only");
  }
  const std::vector<CyclePoint> pts = lc.stroke_points(stroke);
  if (pts.size() < 5) throw ResolutionError("need at least 5 samples on the isochore");

  const CycleSegments seg = segment_specs(lc.params);
  const Mat5 generator =
      isochore_generator(stroke == Stroke::cold_isochore ? seg.cold : seg.hot);
  const double h = stroke_duration(lc.params, stroke) / static_cast<double>(pts.size() - 1);

  std::vector<double> entropy;
  entropy.reserve(pts.size());
  for (const CyclePoint& p : pts) entropy.push_back(p.s_e);
  const std::vector<double> ds = differentiate(entropy, h);

  std::vector<TdynSample> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    TdynSample& s = out[i];
    s.time = pts[i].time;
    s.de_dt = (generator * pts[i].state.to_vector())(0);
    s.ds_dt = ds[i];
    s.singular = std::abs(s.ds_dt) < epsilon;
    s.t_dyn = s.singular ? kNaN : s.de_dt / s.ds_dt;
  }

  std::vector<double> t_dyn;
  for (const TdynSample& s : out) t_dyn.push_back(s.t_dyn);
  const std::vector<double> dt = differentiate(t_dyn, h);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].dt_dyn_dt = dt[i];
  return out;
}

CoherenceRatio energy_coherence_ratio(const LimitCycle& lc, Corner at) {
  const StateVector& s = lc.corner(at);
  const double coherence = std::hypot(s.l_val, s.c_val);
  CoherenceRatio r;
  if (coherence == 0.0 || std::abs(s.e_val) > 1e14 * coherence) {
    r.infinite = true;
    r.value = std::copysign(std::numeric_limits<double>::infinity(), s.e_val);
    return r;
  }
  r.value = s.e_val / coherence;
  return r;
}

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::concave: return "concave";
    case Geometry::convex: return "convex";
    case Geometry::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

GeometryAnalysis analyze_geometry(const LimitCycle& lc) {
  const std::vector<CyclePoint> compression = lc.stroke_points(Stroke::compression);
  const std::vector<CyclePoint> expansion = lc.stroke_points(Stroke::expansion);

  GeometryAnalysis g;
  g.chord_deviation_compression = chord_deviation(compression);
  g.chord_deviation_expansion = chord_deviation(expansion);
  g.curvature_vote = agree(curvature_of(g.chord_deviation_compression),
                           curvature_of(g.chord_deviation_expansion));
  g.coherence_vote = agree(coherence_shape(compression), coherence_shape(expansion));
  g.geometry = agree(g.curvature_vote, g.coherence_vote);

  if (!compression.empty()) {
    double mean = 0.0;
    for (const CyclePoint& p : compression) mean += p.coherence;
    mean /= static_cast<double>(compression.size());
    double var = 0.0;
    for (const CyclePoint& p : compression) var += (p.coherence - mean) * (p.coherence - mean);
    var /= static_cast<double>(compression.size());
    g.coherence_spread = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
  }
  return g;
}

Geometry classify_geometry(const LimitCycle& lc) { return analyze_geometry(lc).geometry; }

CycleReport make_report(const LimitCycle& lc) {
  CycleReport r;
  r.heat = heats(lc);
  r.cooling_power = r.heat.q_cold / lc.params.tau_cycle;
  r.entropy_production = entropy_production(r.heat.q_cold, r.heat.q_hot, lc.params);
  r.classification = classify(r.heat.q_cold, r.heat.q_hot);
  r.ratio_at_a = energy_coherence_ratio(lc, Corner::A);
  r.geometry = classify_geometry(lc);
  return r;
}

}  // namespace otto

#include "otto/atlas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "otto/errors.hpp"

namespace otto {
namespace {

// Cheapest options that still give exact heats: no cross-check, one sample.
SolveOptions heat_only(SolveOptions options) {
  options.cross_check = false;
  options.samples_per_segment = 1;
  return options;
}

double cooling_power_at(const CycleParams& base, double tau, const SolveOptions& options) {
  const LimitCycle lc = solve_limit_cycle(base.with_tau(tau), options);
  return heats(lc).q_cold / tau;
}

double mid_isochore_entropy_rate(const CycleParams& base, double tau, Stroke stroke,
                                 const SolveOptions& options) {
  const LimitCycle lc = solve_limit_cycle(base.with_tau(tau), options);
  const std::vector<TdynSample> profile = dynamical_temperature_profile(lc, stroke);
  return profile[profile.size() / 2].ds_dt;
}

}  // namespace

std::vector<double> make_grid(double lo, double hi, int count, Spacing spacing) {
  if (count < 0) throw DomainError("grid count must be non-negative");
  if (count == 0) return {};
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("grid needs 0 < lo <= hi");
  if (count == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double steps = static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / steps;
    grid[static_cast<std::size_t>(i)] =
        spacing == Spacing::linear ? lo + (hi - lo) * u
                                   : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void SweepSpec::validate() const {
  base.validate();
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || !std::isfinite(taus[i])) {
      throw DomainError("sweep cycle times must be positive and finite");
    }
    if (i > 0 && !(taus[i] > taus[i - 1])) {
      throw DomainError("sweep grid must be strictly increasing");
    }
  }
}

SweepRecord evaluate_point(const CycleParams& params, const SolveOptions& options) {
  SweepRecord r;
  r.tau_cycle = params.tau_cycle;
  try {
    const LimitCycle lc = solve_limit_cycle(params, options);
    const CycleReport report = make_report(lc);
    r.q_cold = report.heat.q_cold;
    r.q_hot = report.heat.q_hot;
    r.work = report.heat.work;
    r.cooling_power = report.cooling_power;
    r.entropy_production = report.entropy_production;
    r.first_law_residual = report.heat.first_law_residual;
    r.lambda2_modulus = lc.lambda2.modulus;
    r.lambda2_phase = lc.lambda2.phase;
    r.classification = report.classification;
    r.geometry = report.geometry;
    r.ratio_at_a = report.ratio_at_a;
    r.anchor = lc.anchor;
    r.iteration_discrepancy = lc.iteration_discrepancy;
  } catch (const std::exception& e) {
    r.error = e.what();
    if (r.error.empty()) r.error = "unknown failure";
  }
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t n = spec.taus.size();
  std::vector<SweepRecord> records(n);

  unsigned workers = spec.threads == 0 ? std::thread::hardware_concurrency() : spec.threads;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      records[i] = evaluate_point(spec.base.with_tau(spec.taus[i]), spec.solve);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return records;
}

bool TransitionReport::in_short_circuit_window(double tau, double slack) const {
  return std::any_of(short_circuit_windows.begin(), short_circuit_windows.end(),
                     [&](const Window& w) { return w.contains(tau, slack); });
}

TransitionReport find_transitions(const std::vector<SweepRecord>& records, const CycleParams& base,
                                  const SolveOptions& options, double relative_tolerance) {
  if (records.size() < 3) throw DomainError("find_transitions needs at least 3 records");

  std::vector<const SweepRecord*> ok;
  for (const SweepRecord& r : records) {
    if (r.ok()) ok.push_back(&r);
  }
  TransitionReport report;
  if (ok.empty()) return report;

  const SolveOptions fast = heat_only(options);
  // crossing_after[i] holds the refined zero between ok[i] and ok[i + 1].
  std::vector<std::optional<double>> crossing_after(ok.size());
  for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
    const double p_lo = ok[i]->cooling_power;
    const double p_hi = ok[i + 1]->cooling_power;
    if (p_lo == 0.0 || p_hi == 0.0 || (p_lo > 0.0) == (p_hi > 0.0)) continue;

    Bracket b{ok[i]->tau_cycle, ok[i + 1]->tau_cycle, p_lo, p_hi, 0.0};
    double lo = b.tau_lo;
    double hi = b.tau_hi;
    const bool lo_positive = p_lo > 0.0;
    for (int iter = 0; iter < 200 && hi - lo > relative_tolerance * 0.5 * (lo + hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double p = cooling_power_at(base, mid, fast);
      if ((p > 0.0) == lo_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    b.tau_star = 0.5 * (lo + hi);
    crossing_after[i] = b.tau_star;
    report.brackets.push_back(b);
  }

  for (std::size_t i = 0; i < ok.size();) {
    if (ok[i]->classification != Classification::short_circuit) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ok.size() && ok[j + 1]->classification == Classification::short_circuit) ++j;
    Window w{ok[i]->tau_cycle, ok[j]->tau_cycle};
    if (i > 0 && crossing_after[i - 1]) w.tau_lo = *crossing_after[i - 1];
    if (crossing_after[j]) w.tau_hi = *crossing_after[j];
    report.short_circuit_windows.push_back(w);
    i = j + 1;
  }

  const auto max_entropy = std::max_element(ok.begin(), ok.end(), [](auto a, auto b) {
    return a->entropy_production < b->entropy_production;
  });
  report.tau_max_entropy_production = (*max_entropy)->tau_cycle;
  const auto min_power = std::min_element(ok.begin(), ok.end(), [](auto a, auto b) {
    return a->cooling_power < b->cooling_power;
  });
  report.tau_min_cooling_power = (*min_power)->tau_cycle;

  const SweepRecord* min_ratio = nullptr;
  for (const SweepRecord* r : ok) {
    if (r->ratio_at_a.infinite) continue;
    if (!min_ratio || r->ratio_at_a.magnitude() < min_ratio->ratio_at_a.magnitude()) min_ratio = r;
  }
  if (min_ratio) report.tau_min_coherence_ratio = min_ratio->tau_cycle;

  const SweepRecord* last_convex = nullptr;
  for (const SweepRecord* r : ok) {
    if (r->geometry == Geometry::convex) last_convex = r;
  }
  if (last_convex) {
    for (const SweepRecord* r : ok) {
      if (r->tau_cycle > last_convex->tau_cycle && r->geometry == Geometry::concave) {
        report.tau_geometry_flip = 0.5 * (last_convex->tau_cycle + r->tau_cycle);
        break;
      }
    }
  }
  if (report.tau_geometry_flip) {
    try {
      const double half = quantization_time(base, 0.5) / (base.fractions.hc / base.fractions.sum());
      report.flip_distance_to_half_landmark = std::abs(*report.tau_geometry_flip - half);
    } catch (const DomainError&) {
    }
  }
  return report;
}

std::vector<Landmark> landmark_times(const CycleParams& params, const std::vector<double>& ls,
                                     const std::vector<Window>& windows, double slack,
                                     const SolveOptions& options) {
  const double f_hc = params.fractions.hc / params.fractions.sum();
  std::vector<Landmark> out;
  out.reserve(ls.size());
  for (double l : ls) {
    Landmark m;
    m.l = l;
    m.tau_adiabat = quantization_time(params, l);
    m.tau_cycle = m.tau_adiabat / f_hc;
    m.in_short_circuit_window = std::any_of(windows.begin(), windows.end(),
                                            [&](const Window& w) { return w.contains(m.tau_cycle, slack); });
    const SweepRecord r = evaluate_point(params.with_tau(m.tau_cycle), heat_only(options));
    m.error = r.error;
    m.classification = r.classification;
    m.cooling_power = r.cooling_power;
    out.push_back(m);
  }
  return out;
}

std::vector<TdynSingularity> locate_tdyn_singularities(const CycleParams& base, const Window& window,
                                                       const SolveOptions& options,
                                                       int scan_points) {
  if (scan_points < 2) throw DomainError("need at least 2 scan points");
  SolveOptions opts = options;
  opts.cross_check = false;

  const std::vector<double> taus = make_grid(window.tau_lo, window.tau_hi, scan_points, Spacing::linear);
  std::vector<TdynSingularity> out;
  for (Stroke stroke : {Stroke::cold_isochore, Stroke::hot_isochore}) {
    std::vector<double> rates;
    rates.reserve(taus.size());
    for (double tau : taus) rates.push_back(mid_isochore_entropy_rate(base, tau, stroke, opts));

    for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
      if ((rates[i] > 0.0) == (rates[i + 1] > 0.0)) continue;
      double lo = taus[i];
      double hi = taus[i + 1];
      const bool lo_positive = rates[i] > 0.0;
      double mid = 0.5 * (lo + hi);
      for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double r = mid_isochore_entropy_rate(base, mid, stroke, opts);
        if (std::abs(r) < 1e-2 * kTdynSingularThreshold) break;
        if ((r > 0.0) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const LimitCycle lc = solve_limit_cycle(base.with_tau(mid), opts);
      const std::vector<TdynSample> profile = dynamical_temperature_profile(lc, stroke);
      const auto closest = std::min_element(profile.begin(), profile.end(), [](const auto& a, const auto& b) {
        return std::abs(a.ds_dt) < std::abs(b.ds_dt);
      });
      TdynSingularity s;
      s.stroke = stroke;
      s.tau_cycle = mid;
      s.time = closest->time;
      s.ds_dt = closest->ds_dt;
      s.flagged = std::any_of(profile.begin(), profile.end(), [](const auto& p) { return p.singular; });
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace otto

#include "otto/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "otto/config.hpp"
#include "otto/errors.hpp"
#include "otto/export.hpp"
#include "otto/validate.hpp"

namespace otto {
namespace {

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

// Two grid spacings around tau, the tolerance for matching a landmark to a
// short-circuit window.
double grid_slack(const std::vector<double>& grid, double tau) {
  if (grid.size() < 2) return 0.0;
  const auto it = std::lower_bound(grid.begin(), grid.end(), tau);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - grid.begin()), grid.size() - 1);
  double spacing = 0.0;
  if (i > 0) spacing = std::max(spacing, grid[i] - grid[i - 1]);
  if (i + 1 < grid.size()) spacing = std::max(spacing, grid[i + 1] - grid[i]);
  return 2.0 * spacing;
}

struct SweepOutcome {
  std::vector<SweepRecord> records;
  std::optional<TransitionReport> report;
  std::vector<Landmark> landmarks;
};

SweepOutcome sweep_with_annotations(const RunConfig& cfg) {
  SweepOutcome o;
  const SweepSpec spec = cfg.sweep_spec();
  o.records = run_sweep(spec);
  const std::size_t ok = static_cast<std::size_t>(
      std::count_if(o.records.begin(), o.records.end(), [](const SweepRecord& r) { return r.ok(); }));
  if (ok >= 3) o.report = find_transitions(o.records, cfg.params, spec.solve);
  const std::vector<Window> windows =
      o.report ? o.report->short_circuit_windows : std::vector<Window>{};
  const double f_hc = cfg.params.fractions.hc / cfg.params.fractions.sum();
  for (double l : cfg.landmarks) {
    double slack = 0.0;
    try {
      slack = grid_slack(spec.taus, quantization_time(cfg.params, l) / f_hc);
    } catch (const DomainError&) {
    }
    try {
      const std::vector<Landmark> one = landmark_times(cfg.params, {l}, windows, slack, spec.solve);
      o.landmarks.push_back(one.front());
    } catch (const DomainError& e) {
      Landmark m;
      m.l = l;
      m.error = e.what();
      o.landmarks.push_back(m);
    }
  }
  return o;
}

int run_cycle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const LimitCycle lc = solve_limit_cycle(cfg.params, cfg.solve_options());
  const CycleReport rep = make_report(lc);
  std::ostringstream body;
  if (cfg.format == Format::csv) {
    write_trajectory_csv(body, lc);
  } else {
    nlohmann::json doc = trajectory_json(lc);
    doc["summary"] = {{"q_cold", rep.heat.q_cold},
                      {"q_hot", rep.heat.q_hot},
                      {"work", rep.heat.work},
                      {"cooling_power", rep.cooling_power},
                      {"entropy_production", rep.entropy_production},
                      {"classification", std::string(1, code(rep.classification))},
                      {"geometry", to_string(rep.geometry)},
                      {"lambda2_modulus", lc.lambda2.modulus},
                      {"lambda2_phase", lc.lambda2.phase}};
    body << doc.dump(2) << '\n';
  }
  emit(cfg.out, body.str(), out);
  std::ostream& log = cfg.out.empty() ? err : out;
  log << fmt::format("tau = {:.10g}  Q_c/tau = {:.6e}  dS_u = {:.6e}  {}  {}  |lambda2| = {:.10g}\n",
                     cfg.params.tau_cycle, rep.cooling_power, rep.entropy_production,
                     to_string(rep.classification), to_string(rep.geometry), lc.lambda2.modulus);
  return kExitOk;
}

int run_sweep_mode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SweepOutcome o = sweep_with_annotations(cfg);
  if (cfg.format == Format::json) {
    emit(cfg.out, sweep_json(cfg.params, o.records, o.report, o.landmarks).dump(2) + "\n", out);
  } else {
    std::ostringstream main;
    std::ostringstream notes;
    write_sweep_csv(main, o.records);
    write_annotations_csv(notes, o.report, o.landmarks);
    if (cfg.out.empty()) {
      out << main.str() << '\n' << notes.str();
    } else {
      write_file(cfg.out, main.str());
      write_file(cfg.out + ".transitions.csv", notes.str());
    }
  }
  const auto failed = std::count_if(o.records.begin(), o.records.end(),
                                    [](const SweepRecord& r) { return !r.ok(); });
  if (failed > 0) err << fmt::format("warning: {} of {} sweep points failed\n", failed, o.records.size());
  return kExitOk;
}

int run_landmarks(const RunConfig& cfg, std::ostream& out) {
  const SweepOutcome o = sweep_with_annotations(cfg);
  if (cfg.format == Format::json) {
    nlohmann::json marks = nlohmann::json::array();
    for (const Landmark& m : o.landmarks) marks.push_back(landmark_json(m));
    emit(cfg.out, nlohmann::json{{"metadata", metadata(cfg.params)}, {"landmarks", marks}}.dump(2) + "\n", out);
  } else {
    std::ostringstream body;
    body << "l,tau_adiabat,tau_cycle,classification,cooling_power,in_short_circuit_window,error\n";
    for (const Landmark& m : o.landmarks) {
      body << fmt::format("{:.17g},{:.17g},{:.17g},{},{:.17g},{},{}\n", m.l, m.tau_adiabat, m.tau_cycle,
                          code(m.classification), m.cooling_power, m.in_short_circuit_window ? 1 : 0,
                          m.error.empty() ? "" : "\"" + m.error + "\"");
    }
    emit(cfg.out, body.str(), out);
  }
  return kExitOk;
}

int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ValidateOptions opts;
  opts.flip_eeq_sign = cfg.flip_eeq_sign;
  const std::vector<CheckResult> results = run_validation(cfg.params, opts);
  std::ostringstream body;
  print_results(body, results);
  emit(cfg.out, body.str(), out);
  if (all_passed(results)) return kExitOk;
  for (const CheckResult& r : results) {
    if (r.status == CheckStatus::fail) err << "validation failed: " << r.name << '\n';
  }
  return kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Otto refrigerator: limit cycles, sweeps and landmarks", "otto"};
  FlagOverrides flags;
  std::string preset_name, config_path, mode, spacing, format, out_path;
  double tau = 0.0, tau_min = 0.0, tau_max = 0.0;
  int tau_count = 0, samples = 0;

  auto* o_preset = app.add_option("--preset", preset_name, "Bundled parameter set (paper-family)");
  auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
  auto* o_mode = app.add_option("--mode", mode, "cycle | sweep | landmarks | validate");
  auto* o_tau = app.add_option("--tau", tau, "Cycle period for cycle mode");
  auto* o_tau_min = app.add_option("--tau-min", tau_min, "Sweep grid start");
  auto* o_tau_max = app.add_option("--tau-max", tau_max, "Sweep grid end");
  auto* o_tau_count = app.add_option("--tau-count", tau_count, "Sweep grid size");
  auto* o_spacing = app.add_option("--tau-spacing", spacing, "linear | log");
  auto* o_format = app.add_option("--format", format, "csv | json");
  auto* o_out = app.add_option("--out", out_path, "Output path (default: standard output)");
  auto* o_samples = app.add_option("--samples-per-segment", samples, "Trajectory samples per stroke");
  app.add_flag("--validate", flags.validate, "Run the oracle suite (same as --mode validate)");
  app.add_flag("--debug-flip-eeq-sign", flags.flip_eeq_sign,
               "Invert E_eq in the validation harness; the Gibbs checks must fail");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (*o_preset) flags.preset = preset_name;
  if (*o_config) flags.config_path = config_path;
  if (*o_mode) flags.mode = mode;
  if (*o_tau) flags.tau = tau;
  if (*o_tau_min) flags.tau_min = tau_min;
  if (*o_tau_max) flags.tau_max = tau_max;
  if (*o_tau_count) flags.tau_count = tau_count;
  if (*o_spacing) flags.tau_spacing = spacing;
  if (*o_format) flags.format = format;
  if (*o_out) flags.out = out_path;
  if (*o_samples) flags.samples_per_segment = samples;

  RunConfig cfg;
  try {
    cfg = parse_config(flags);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  for (const std::string& w : cfg.warnings) err << "warning: " << w << '\n';

  try {
    switch (cfg.mode) {
      case Mode::cycle: return run_cycle(cfg, out, err);
      case Mode::sweep: return run_sweep_mode(cfg, out, err);
      case Mode::landmarks: return run_landmarks(cfg, out);
      case Mode::validate: return run_validate(cfg, out, err);
    }
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace otto

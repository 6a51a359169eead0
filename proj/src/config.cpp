#include "otto/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>

#include "otto/errors.hpp"

namespace otto {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void expect_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void check_keys(const json& node, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

int integer_at(const json& node, const std::string& path) {
  if (!node.is_number_integer()) throw ConfigError(path, "expected an integer");
  return node.get<int>();
}

std::string string_at(const json& node, const std::string& path) {
  if (!node.is_string()) throw ConfigError(path, "expected a string");
  return node.get<std::string>();
}

bool bool_at(const json& node, const std::string& path) {
  if (!node.is_boolean()) throw ConfigError(path, "expected true or false");
  return node.get<bool>();
}

std::vector<double> numbers_at(const json& node, const std::string& path) {
  if (!node.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(number_at(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Mode parse_mode(const std::string& s, const std::string& path) {
  if (s == "cycle") return Mode::cycle;
  if (s == "sweep") return Mode::sweep;
  if (s == "landmarks") return Mode::landmarks;
  if (s == "validate") return Mode::validate;
  throw ConfigError(path, "unknown mode '" + s + "' (cycle, sweep, landmarks, validate)");
}

Format parse_format(const std::string& s, const std::string& path) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError(path, "unknown format '" + s + "' (csv, json)");
}

Spacing parse_spacing(const std::string& s, const std::string& path) {
  if (s == "linear") return Spacing::linear;
  if (s == "log") return Spacing::log;
  throw ConfigError(path, "unknown spacing '" + s + "' (linear, log)");
}

void apply_params(const json& node, CycleParams& p) {
  const std::string path = "params";
  expect_object(node, path);
  check_keys(node, path,
             {"j_coupling", "t_hot", "t_cold", "omega_hot", "omega_cold", "k_down_hot",
              "k_down_cold", "tau_cycle", "fractions", "dephase_at_boundaries"});
  const std::pair<const char*, double*> scalars[] = {
      {"j_coupling", &p.j_coupling}, {"t_hot", &p.t_hot},
      {"t_cold", &p.t_cold},         {"omega_hot", &p.omega_hot},
      {"omega_cold", &p.omega_cold}, {"k_down_hot", &p.k_down_hot},
      {"k_down_cold", &p.k_down_cold}, {"tau_cycle", &p.tau_cycle}};
  for (const auto& [key, target] : scalars) {
    if (node.contains(key)) *target = number_at(node.at(key), join(path, key));
  }
  if (node.contains("dephase_at_boundaries")) {
    p.dephase_at_boundaries =
        bool_at(node.at("dephase_at_boundaries"), join(path, "dephase_at_boundaries"));
  }
  if (node.contains("fractions")) {
    const std::string fpath = join(path, "fractions");
    const json& f = node.at("fractions");
    expect_object(f, fpath);
    check_keys(f, fpath, {"hc", "c", "ch", "h"});
    for (const char* key : {"hc", "c", "ch", "h"}) {
      if (!f.contains(key)) throw ConfigError(join(fpath, key), "required (give all four fractions)");
    }
    p.fractions = {number_at(f.at("hc"), join(fpath, "hc")), number_at(f.at("c"), join(fpath, "c")),
                   number_at(f.at("ch"), join(fpath, "ch")), number_at(f.at("h"), join(fpath, "h"))};
  }
}

void apply_sweep(const json& node, RunConfig& cfg) {
  const std::string path = "sweep";
  expect_object(node, path);
  check_keys(node, path,
             {"taus", "tau_min", "tau_max", "tau_count", "tau_spacing", "landmarks", "threads"});
  const bool grid_keys = node.contains("tau_min") || node.contains("tau_max") ||
                         node.contains("tau_count") || node.contains("tau_spacing");
  if (node.contains("taus") && grid_keys) {
    throw ConfigError(path, "give either taus or tau_min/tau_max/tau_count/tau_spacing");
  }
  if (node.contains("taus")) {
    cfg.taus = numbers_at(node.at("taus"), join(path, "taus"));
    if (cfg.taus.empty()) cfg.grid.tau_count = 0;
  }
  if (node.contains("tau_min")) cfg.grid.tau_min = number_at(node.at("tau_min"), join(path, "tau_min"));
  if (node.contains("tau_max")) cfg.grid.tau_max = number_at(node.at("tau_max"), join(path, "tau_max"));
  if (node.contains("tau_count")) {
    cfg.grid.tau_count = integer_at(node.at("tau_count"), join(path, "tau_count"));
  }
  if (node.contains("tau_spacing")) {
    const std::string sp = join(path, "tau_spacing");
    cfg.grid.spacing = parse_spacing(string_at(node.at("tau_spacing"), sp), sp);
  }
  if (node.contains("landmarks")) {
    cfg.landmarks = numbers_at(node.at("landmarks"), join(path, "landmarks"));
  }
  if (node.contains("threads")) {
    const int t = integer_at(node.at("threads"), join(path, "threads"));
    if (t < 0) throw ConfigError(join(path, "threads"), "must be non-negative");
    cfg.threads = static_cast<unsigned>(t);
  }
}

void apply_output(const json& node, RunConfig& cfg) {
  const std::string path = "output";
  expect_object(node, path);
  check_keys(node, path, {"path", "format"});
  if (node.contains("path")) cfg.out = string_at(node.at("path"), join(path, "path"));
  if (node.contains("format")) {
    const std::string fp = join(path, "format");
    cfg.format = parse_format(string_at(node.at("format"), fp), fp);
  }
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::cycle: return "cycle";
    case Mode::sweep: return "sweep";
    case Mode::landmarks: return "landmarks";
    case Mode::validate: return "validate";
  }
  return "cycle";
}

std::string_view to_string(Format f) { return f == Format::json ? "json" : "csv"; }

std::vector<double> RunConfig::sweep_grid() const {
  if (!taus.empty()) return taus;
  return make_grid(grid.tau_min, grid.tau_max, grid.tau_count, grid.spacing);
}

SolveOptions RunConfig::solve_options() const {
  SolveOptions o;
  o.samples_per_segment = samples_per_segment;
  return o;
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  s.base = params;
  s.taus = sweep_grid();
  s.landmarks = landmarks;
  s.solve = solve_options();
  s.threads = threads;
  return s;
}

CycleParams preset(std::string_view name) {
  if (name == "paper-family") return paper_family();
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"paper-family"}; }

RunConfig apply_json(const json& doc, RunConfig cfg) {
  expect_object(doc, "");
  check_keys(doc, "",
             {"preset", "mode", "params", "sweep", "output", "samples_per_segment", "verbosity"});
  // The preset itself is applied by parse_config so that a flag can
  // replace it; here it is only checked.
  if (doc.contains("preset")) preset(string_at(doc.at("preset"), "preset"));
  if (doc.contains("mode")) cfg.mode = parse_mode(string_at(doc.at("mode"), "mode"), "mode");
  if (doc.contains("params")) apply_params(doc.at("params"), cfg.params);
  if (doc.contains("sweep")) apply_sweep(doc.at("sweep"), cfg);
  if (doc.contains("output")) apply_output(doc.at("output"), cfg);
  if (doc.contains("samples_per_segment")) {
    cfg.samples_per_segment = integer_at(doc.at("samples_per_segment"), "samples_per_segment");
  }
  if (doc.contains("verbosity")) cfg.verbosity = integer_at(doc.at("verbosity"), "verbosity");
  return cfg;
}

void finalize(RunConfig& cfg) {
  try {
    cfg.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError("params", e.what());
  }
  if (cfg.samples_per_segment < 1) {
    throw ConfigError("samples_per_segment", "must be at least 1");
  }
  if (!cfg.taus.empty()) {
    for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
      const std::string path = "sweep.taus[" + std::to_string(i) + "]";
      if (!(cfg.taus[i] > 0.0)) throw ConfigError(path, "must be positive");
      if (i > 0 && !(cfg.taus[i] > cfg.taus[i - 1])) throw ConfigError(path, "grid must be strictly increasing");
    }
  } else {
    if (cfg.grid.tau_count < 0) throw ConfigError("sweep.tau_count", "must be non-negative");
    if (cfg.grid.tau_count > 0) {
      if (!(cfg.grid.tau_min > 0.0)) throw ConfigError("sweep.tau_min", "must be positive");
      if (!(cfg.grid.tau_max >= cfg.grid.tau_min)) {
        throw ConfigError("sweep.tau_max", "must not be below tau_min");
      }
      if (cfg.grid.tau_count > 1 && !(cfg.grid.tau_max > cfg.grid.tau_min)) {
        throw ConfigError("sweep.tau_max", "must exceed tau_min for more than one point");
      }
    }
  }
  for (std::size_t i = 0; i < cfg.landmarks.size(); ++i) {
    if (!(cfg.landmarks[i] > 0.0)) {
      throw ConfigError("sweep.landmarks[" + std::to_string(i) + "]", "must be positive");
    }
  }
  if (!cfg.params.refrigerator_condition()) {
    cfg.warnings.push_back(
        "Omega_c/Omega_h >= T_c/T_h: the refrigerator condition fails, expect no cooling");
  }
}

RunConfig parse_config(const FlagOverrides& flags) {
  json doc = json::object();
  if (flags.config_path) {
    std::ifstream in(*flags.config_path);
    if (!in) throw IoError("cannot read config file '" + *flags.config_path + "'");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
  }

  RunConfig cfg;
  std::string name = "paper-family";
  if (doc.is_object() && doc.contains("preset")) name = string_at(doc.at("preset"), "preset");
  if (flags.preset) name = *flags.preset;
  cfg.params = preset(name);

  cfg = apply_json(doc, std::move(cfg));

  if (flags.mode) cfg.mode = parse_mode(*flags.mode, "--mode");
  if (flags.validate) cfg.mode = Mode::validate;
  if (flags.tau) cfg.params.tau_cycle = *flags.tau;
  const bool grid_flag = flags.tau_min || flags.tau_max || flags.tau_count || flags.tau_spacing;
  if (grid_flag) cfg.taus.clear();
  if (flags.tau_min) cfg.grid.tau_min = *flags.tau_min;
  if (flags.tau_max) cfg.grid.tau_max = *flags.tau_max;
  if (flags.tau_count) cfg.grid.tau_count = *flags.tau_count;
  if (flags.tau_spacing) cfg.grid.spacing = parse_spacing(*flags.tau_spacing, "--tau-spacing");
  if (flags.format) cfg.format = parse_format(*flags.format, "--format");
  if (flags.out) cfg.out = *flags.out;
  if (flags.samples_per_segment) cfg.samples_per_segment = *flags.samples_per_segment;
  cfg.flip_eeq_sign = flags.flip_eeq_sign;

  finalize(cfg);
  return cfg;
}

}  // namespace otto

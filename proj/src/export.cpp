#include "otto/export.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "otto/errors.hpp"

namespace otto {
namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Stroke parse_stroke(const std::string& s) {
  for (Stroke k : kStrokes) {
    if (to_string(k) == s) return k;
  }
  throw IoError("unknown segment '" + s + "'");
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw IoError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError("bad number '" + s + "'");
  }
}

std::vector<std::string> record_fields(const SweepRecord& r) {
  return {num(r.tau_cycle),
          num(r.q_cold),
          num(r.q_hot),
          num(r.work),
          num(r.cooling_power),
          num(r.entropy_production),
          num(r.first_law_residual),
          num(r.lambda2_modulus),
          num(r.lambda2_phase),
          r.ok() ? std::string(1, code(r.classification)) : "",
          r.ok() ? std::string(to_string(r.geometry)) : "",
          num(r.ratio_at_a.value),
          r.ratio_at_a.infinite ? "1" : "0",
          num(r.anchor.e_val),
          num(r.anchor.l_val),
          num(r.anchor.c_val),
          num(r.anchor.d_val),
          num(r.iteration_discrepancy),
          csv_field(r.error)};
}

}  // namespace

json metadata(const CycleParams& p) {
  json params = {{"j_coupling", p.j_coupling},
                 {"t_hot", p.t_hot},
                 {"t_cold", p.t_cold},
                 {"omega_hot", p.omega_hot},
                 {"omega_cold", p.omega_cold},
                 {"k_down_hot", p.k_down_hot},
                 {"k_down_cold", p.k_down_cold},
                 {"tau_cycle", p.tau_cycle},
                 {"fractions", {{"hc", p.fractions.hc}, {"c", p.fractions.c}, {"ch", p.fractions.ch}, {"h", p.fractions.h}}},
                 {"dephase_at_boundaries", p.dephase_at_boundaries}};
  json conventions = {
      {"units", "hbar = k_B = 1, natural logarithms"},
      {"heat", "q > 0 means energy flows into the working medium; q_cold = E(B) - E(A), q_hot = E(D) - E(C)"},
      {"entropy_production", "bath side: -q_hot/T_h - q_cold/T_c"},
      {"equilibrium_energy", "E_eq = -Omega tanh(Omega / 2T), relaxation toward the ground state"},
      {"rates", "k_down as given, k_up = k_down exp(-Omega/T), Gamma = k_down + k_up"},
      {"anchor", "point A, start of the cold isochore"},
      {"classification", "R refrigerator, S short circuit, E engine, O other"},
      {"coherence", "(L^2 + C^2) / Omega^2"}};
  return {{"code_version", kCodeVersion}, {"parameters", params}, {"conventions", conventions}};
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{"time", "segment", "omega", "Omega", "E", "L", "C",
                                             "D", "S_VN", "S_E", "coherence", "T_dyn",
                                             "T_dyn_singular"};
  return cols;
}

std::vector<TrajectoryRow> trajectory_rows(const LimitCycle& lc) {
  std::vector<TrajectoryRow> rows;
  rows.reserve(lc.trajectory.size());
  for (const CyclePoint& p : lc.trajectory) {
    TrajectoryRow r;
    r.time = p.time;
    r.stroke = p.stroke;
    r.omega = p.omega;
    r.energy_scale = p.energy_scale;
    r.state = p.state;
    r.s_vn = p.s_vn;
    r.s_e = p.s_e;
    r.coherence = p.coherence;
    rows.push_back(r);
  }
  for (Stroke s : {Stroke::cold_isochore, Stroke::hot_isochore}) {
    std::vector<TdynSample> profile;
    try {
      profile = dynamical_temperature_profile(lc, s);
    } catch (const ResolutionError&) {
      continue;
    }
    std::size_t k = 0;
    for (TrajectoryRow& r : rows) {
      if (r.stroke != s || k >= profile.size()) continue;
      r.t_dyn = profile[k].t_dyn;
      r.t_dyn_singular = profile[k].singular;
      ++k;
    }
  }
  return rows;
}

void write_trajectory_csv(std::ostream& os, const LimitCycle& lc) {
  write_row(os, trajectory_columns());
  for (const TrajectoryRow& r : trajectory_rows(lc)) {
    write_row(os, {num(r.time), std::string(to_string(r.stroke)), num(r.omega), num(r.energy_scale),
                   num(r.state.e_val), num(r.state.l_val), num(r.state.c_val), num(r.state.d_val),
                   num(r.s_vn), num(r.s_e), num(r.coherence), r.t_dyn ? num(*r.t_dyn) : "",
                   r.t_dyn_singular ? (*r.t_dyn_singular ? "1" : "0") : ""});
  }
}

json trajectory_json(const LimitCycle& lc) {
  json rows = json::array();
  for (const TrajectoryRow& r : trajectory_rows(lc)) {
    rows.push_back({{"time", r.time},
                    {"segment", to_string(r.stroke)},
                    {"omega", r.omega},
                    {"Omega", r.energy_scale},
                    {"E", r.state.e_val},
                    {"L", r.state.l_val},
                    {"C", r.state.c_val},
                    {"D", r.state.d_val},
                    {"S_VN", r.s_vn},
                    {"S_E", r.s_e},
                    {"coherence", r.coherence},
                    {"T_dyn", r.t_dyn ? num_json(*r.t_dyn) : json(nullptr)},
                    {"T_dyn_singular", r.t_dyn_singular ? json(*r.t_dyn_singular) : json(nullptr)}});
  }
  return {{"metadata", metadata(lc.params)}, {"columns", trajectory_columns()}, {"rows", rows}};
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty trajectory file");
  if (split_csv_line(line) != trajectory_columns()) throw IoError("unexpected trajectory header");
  std::vector<TrajectoryRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != trajectory_columns().size()) throw IoError("wrong field count: " + line);
    TrajectoryRow r;
    r.time = parse_double(f[0]);
    r.stroke = parse_stroke(f[1]);
    r.omega = parse_double(f[2]);
    r.energy_scale = parse_double(f[3]);
    r.state = {parse_double(f[4]), parse_double(f[5]), parse_double(f[6]), parse_double(f[7])};
    r.s_vn = parse_double(f[8]);
    r.s_e = parse_double(f[9]);
    r.coherence = parse_double(f[10]);
    if (!f[12].empty()) {
      r.t_dyn_singular = f[12] == "1";
      r.t_dyn = f[11].empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(f[11]);
    }
    rows.push_back(r);
  }
  return rows;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "tau_cycle",        "q_cold",          "q_hot",         "work",
      "cooling_power",    "entropy_production", "first_law_residual", "lambda2_modulus",
      "lambda2_phase",    "classification",  "geometry",      "ratio_at_A",
      "ratio_infinite",   "anchor_E",        "anchor_L",      "anchor_C",
      "anchor_D",         "iteration_discrepancy", "error"};
  return cols;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  write_row(os, sweep_columns());
  for (const SweepRecord& r : records) write_row(os, record_fields(r));
}

json record_json(const SweepRecord& r) {
  return {{"tau_cycle", r.tau_cycle},
          {"q_cold", r.q_cold},
          {"q_hot", r.q_hot},
          {"work", r.work},
          {"cooling_power", r.cooling_power},
          {"entropy_production", r.entropy_production},
          {"first_law_residual", r.first_law_residual},
          {"lambda2_modulus", r.lambda2_modulus},
          {"lambda2_phase", r.lambda2_phase},
          {"classification", r.ok() ? json(std::string(1, code(r.classification))) : json(nullptr)},
          {"geometry", r.ok() ? json(to_string(r.geometry)) : json(nullptr)},
          {"ratio_at_A", num_json(r.ratio_at_a.value)},
          {"ratio_infinite", r.ratio_at_a.infinite},
          {"anchor_E", r.anchor.e_val},
          {"anchor_L", r.anchor.l_val},
          {"anchor_C", r.anchor.c_val},
          {"anchor_D", r.anchor.d_val},
          {"iteration_discrepancy", r.iteration_discrepancy},
          {"error", r.error}};
}

json landmark_json(const Landmark& m) {
  return {{"l", m.l},
          {"tau_adiabat", m.tau_adiabat},
          {"tau_cycle", m.tau_cycle},
          {"classification", std::string(1, code(m.classification))},
          {"cooling_power", m.cooling_power},
          {"in_short_circuit_window", m.in_short_circuit_window},
          {"error", m.error}};
}

void write_annotations_csv(std::ostream& os, const std::optional<TransitionReport>& report,
                           const std::vector<Landmark>& landmarks) {
  write_row(os, {"kind", "index", "key", "value"});
  auto put = [&](std::string_view kind, std::size_t i, std::string_view key, const std::string& v) {
    write_row(os, {std::string(kind), std::to_string(i), std::string(key), v});
  };
  if (report) {
    for (std::size_t i = 0; i < report->brackets.size(); ++i) {
      const Bracket& b = report->brackets[i];
      put("bracket", i, "tau_lo", num(b.tau_lo));
      put("bracket", i, "tau_hi", num(b.tau_hi));
      put("bracket", i, "power_lo", num(b.power_lo));
      put("bracket", i, "power_hi", num(b.power_hi));
      put("bracket", i, "tau_star", num(b.tau_star));
    }
    for (std::size_t i = 0; i < report->short_circuit_windows.size(); ++i) {
      put("short_circuit_window", i, "tau_lo", num(report->short_circuit_windows[i].tau_lo));
      put("short_circuit_window", i, "tau_hi", num(report->short_circuit_windows[i].tau_hi));
    }
    const std::pair<const char*, const std::optional<double>*> extrema[] = {
        {"tau_max_entropy_production", &report->tau_max_entropy_production},
        {"tau_min_cooling_power", &report->tau_min_cooling_power},
        {"tau_min_coherence_ratio", &report->tau_min_coherence_ratio},
        {"tau_geometry_flip", &report->tau_geometry_flip},
        {"flip_distance_to_half_landmark", &report->flip_distance_to_half_landmark}};
    for (const auto& [key, value] : extrema) {
      if (*value) put("extremum", 0, key, num(**value));
    }
  }
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    const Landmark& m = landmarks[i];
    put("landmark", i, "l", num(m.l));
    put("landmark", i, "tau_adiabat", num(m.tau_adiabat));
    put("landmark", i, "tau_cycle", num(m.tau_cycle));
    put("landmark", i, "classification", std::string(1, code(m.classification)));
    put("landmark", i, "cooling_power", num(m.cooling_power));
    put("landmark", i, "in_short_circuit_window", m.in_short_circuit_window ? "1" : "0");
    if (!m.error.empty()) put("landmark", i, "error", csv_field(m.error));
  }
}

json sweep_json(const CycleParams& base, const std::vector<SweepRecord>& records,
                const std::optional<TransitionReport>& report,
                const std::vector<Landmark>& landmarks) {
  json recs = json::array();
  for (const SweepRecord& r : records) recs.push_back(record_json(r));

  json transitions = nullptr;
  if (report) {
    json brackets = json::array();
    for (const Bracket& b : report->brackets) {
      brackets.push_back({{"tau_lo", b.tau_lo}, {"tau_hi", b.tau_hi}, {"power_lo", b.power_lo},
                          {"power_hi", b.power_hi}, {"tau_star", b.tau_star}});
    }
    json windows = json::array();
    for (const Window& w : report->short_circuit_windows) {
      windows.push_back({{"tau_lo", w.tau_lo}, {"tau_hi", w.tau_hi}});
    }
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    transitions = {{"brackets", brackets},
                   {"short_circuit_windows", windows},
                   {"tau_max_entropy_production", opt(report->tau_max_entropy_production)},
                   {"tau_min_cooling_power", opt(report->tau_min_cooling_power)},
                   {"tau_min_coherence_ratio", opt(report->tau_min_coherence_ratio)},
                   {"tau_geometry_flip", opt(report->tau_geometry_flip)},
                   {"flip_distance_to_half_landmark", opt(report->flip_distance_to_half_landmark)}};
  }
  json marks = json::array();
  for (const Landmark& m : landmarks) marks.push_back(landmark_json(m));

  return {{"metadata", metadata(base)},
          {"columns", sweep_columns()},
          {"records", recs},
          {"transitions", transitions},
          {"landmarks", marks}};
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty()) rows.push_back(split_csv_line(line));
  }
  return rows;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace otto

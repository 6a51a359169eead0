#pragma once

// Plot-ready CSV and JSON output. CSV numbers carry 17 significant digits;
// no timestamps are written, so identical inputs give identical bytes.

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otto/atlas.hpp"

namespace otto {

inline constexpr std::string_view kCodeVersion = "0.1.0";

/// Parameters, sign conventions and code version.
nlohmann::json metadata(const CycleParams& params);

struct TrajectoryRow {
  double time = 0.0;
  Stroke stroke = Stroke::cold_isochore;
  double omega = 0.0;
  double energy_scale = 0.0;
  StateVector state;
  double s_vn = 0.0;
  double s_e = 0.0;
  double coherence = 0.0;
  /// Present on isochore rows only.
  std::optional<double> t_dyn;
  std::optional<bool> t_dyn_singular;
};

/// Trajectory rows with T_dyn filled in on isochores that have enough
/// samples for finite differences.
std::vector<TrajectoryRow> trajectory_rows(const LimitCycle& lc);

const std::vector<std::string>& trajectory_columns();

void write_trajectory_csv(std::ostream& os, const LimitCycle& lc);
nlohmann::json trajectory_json(const LimitCycle& lc);

/// Parses a file written by write_trajectory_csv. Throws IoError on
/// malformed input.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& is);

const std::vector<std::string>& sweep_columns();

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

/// Transition brackets, windows, extremum locations and landmarks as one
/// annotated CSV block (kind, key, value columns).
void write_annotations_csv(std::ostream& os, const std::optional<TransitionReport>& report,
                           const std::vector<Landmark>& landmarks);

nlohmann::json sweep_json(const CycleParams& base, const std::vector<SweepRecord>& records,
                          const std::optional<TransitionReport>& report,
                          const std::vector<Landmark>& landmarks);

nlohmann::json record_json(const SweepRecord& r);
nlohmann::json landmark_json(const Landmark& m);

/// Reads the numeric fields of a sweep CSV back; used for cross-format
/// comparisons. Each row maps column name to its text.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& is);

/// Writes `content` to `path`, or throws IoError.
void write_file(const std::string& path, std::string_view content);

}  // namespace otto

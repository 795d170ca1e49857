#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppe/aniso/solver.hpp"
#include "ppe/harness/config.hpp"
#include "ppe/harness/output.hpp"
#include "ppe/hydro/solver.hpp"

namespace ppe::harness {

/// Outcome of one solver run. Wall time is kept in memory for the console
/// and never written, so persisted records are reproducible byte for byte.
struct RunRecord {
  std::string experiment_id;
  std::string config_hash;
  SolverKind solver = SolverKind::hydro;
  double eps = 0.0;
  bool ok = true;              // false after a blow-up or invariant failure
  std::string message;
  double last_stable_time = 0.0;
  double wall_seconds = 0.0;
  std::vector<CsvRow> series;
  nlohmann::json verdicts = nlohmann::json::object();
  std::vector<std::string> snapshots;

  /// ok and every verdict passed.
  bool pass() const;
  nlohmann::json to_json() const;
};

/// Shared random initial data on the config grid.
aniso::AnisoState initial_state(const RunConfig& c, const SpectralGrid& g);

/// Runs one solver with monitors. Writes record.json, series.csv and
/// snapshots under output_dir/experiment_id/run_<solver> when `write` is set.
/// Invalid configs (including an aniso dt above the cap) throw ConfigError
/// before any step is taken.
RunRecord cmd_run(const RunConfig& c, bool write = true);

std::filesystem::path run_directory(const RunConfig& c);

}  // namespace ppe::harness

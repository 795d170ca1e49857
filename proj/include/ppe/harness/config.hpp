#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppe/aniso/stepping.hpp"
#include "ppe/core/grid.hpp"
#include "ppe/hydro/solver.hpp"
#include "ppe/model/params.hpp"
#include "ppe/model/source.hpp"

namespace ppe::harness {

enum class SolverKind { aniso, hydro };

std::string_view to_string(SolverKind k);
SolverKind solver_kind_from_string(std::string_view s);

/// Everything one run or sweep needs. The mollifier width of the source is
/// always the aspect ratio eps.
struct RunConfig {
  int n1 = 32, n2 = 32, n3 = 32;
  model::PhysicalParams params;
  model::SourceKind source = model::SourceKind::convolved_delta;
  model::Point3 source_center{0.5, 0.5, 0.0};
  double source_amplitude = 1.0;
  double source_radius = 0.3;  // radius of the default kernel bumps
  StepControl ctrl;
  hydro::HydroOptions hydro;
  SolverKind solver = SolverKind::hydro;
  std::uint64_t seed = 1;
  double init_amplitude = 1.0;
  int init_bandlimit = 2;
  std::string experiment_id = "default";
  std::string output_dir = "out";
  int sample_every = 5;    // steps between stored samples
  int snapshot_every = 0;  // samples between snapshots, 0 disables
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  std::vector<double> mu_list{0.1, 0.05, 0.025};

  SpectralGrid grid() const { return {n1, n2, n3, params.a}; }
  model::SourceSpec source_spec(const SpectralGrid& g) const;

  /// Throws ConfigError for invalid sub-configs. The dt cap applies to aniso runs.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Flat `key = value` text, '#' starts a comment. Unknown keys and
/// malformed values throw ConfigError. Missing keys keep their defaults.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::filesystem::path& path);

/// Applies one key; throws ConfigError for unknown keys.
void set_key(RunConfig& c, const std::string& key, const std::string& value);

/// Keys in canonical (sorted) order.
std::vector<std::string> config_keys();

/// Canonical serialization: every key, sorted, one `key = value` per line,
/// doubles in shortest round-trip form.
std::string serialize(const RunConfig& c);

/// FNV-1a 64 of the canonical serialization without output_dir, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace ppe::harness

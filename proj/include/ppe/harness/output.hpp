#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace ppe::harness {

/// One row of the fixed CSV schema.
struct CsvRow {
  std::string experiment_id;
  double eps = 0.0;
  double t = 0.0;
  std::string quantity;
  double value = 0.0;
};

/// Writes `experiment_id,eps,t,quantity,value` with shortest round-trip doubles.
void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Two whitespace-separated columns, '#' header lines first.
void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<std::array<double, 2>>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Creates the directory or throws ConfigError.
void ensure_directory(const std::filesystem::path& dir);

std::string format_double(double x);

}  // namespace ppe::harness

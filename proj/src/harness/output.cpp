#include "ppe/harness/output.hpp"

#include <fmt/format.h>

#include <fstream>

#include "ppe/core/errors.hpp"

namespace ppe::harness {

namespace {

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) { return fmt::format("{}", x); }

void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows) {
  std::ofstream out = open(path);
  out << "experiment_id,eps,t,quantity,value\n";
  for (const auto& r : rows) {
    out << r.experiment_id << ',' << format_double(r.eps) << ',' << format_double(r.t) << ','
        << r.quantity << ',' << format_double(r.value) << '\n';
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out = open(path);
  out << j.dump(2) << '\n';
}

void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<std::array<double, 2>>& rows) {
  std::ofstream out = open(path);
  for (const auto& h : header) out << "# " << h << '\n';
  for (const auto& r : rows) out << format_double(r[0]) << ' ' << format_double(r[1]) << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open(path);
  out << text;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory " + dir.string());
  }
}

}  // namespace ppe::harness

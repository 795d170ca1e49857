#include "ppe/harness/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/harness/output.hpp"

namespace ppe::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read " + p.string());
  return json::parse(in);
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string cmd_report(const RunConfig& c) {
  const fs::path root = fs::path(c.output_dir) / c.experiment_id;
  if (!fs::is_directory(root)) throw ConfigError("no results under " + root.string());
  std::string out = fmt::format("experiment {}\n\n", c.experiment_id);
  bool any = false;

  for (const auto& dir : sorted_entries(root)) {
    const fs::path rec = dir / "record.json";
    if (!fs::exists(rec)) continue;
    any = true;
    const json j = read_json(rec);
    out += fmt::format("run {} (eps {}): {}  status {}\n", j["solver"].get<std::string>(),
                       format_double(j["eps"].get<double>()), j["pass"].get<bool>() ? "PASS" : "FAIL",
                       j["status"].get<std::string>());
    for (const auto& [name, v] : j["verdicts"].items()) {
      out += fmt::format("  {:<16} {}\n", name, v.value("pass", false) ? "pass" : "fail");
    }
  }

  const fs::path sweep = root / "sweep" / "summary.txt";
  if (fs::exists(sweep)) {
    any = true;
    std::ifstream in(sweep);
    out += "\nsweep\n" + std::string(std::istreambuf_iterator<char>(in), {});
    const json j = read_json(root / "sweep" / "sweep.json");
    out += fmt::format("a priori uniformity: {}\n", j["apriori"]["pass"].get<bool>() ? "pass" : "fail");
  }

  const auto checks = sorted_entries(root / "checks");
  if (!checks.empty()) out += "\nchecks\n";
  for (const auto& p : checks) {
    if (p.extension() != ".json") continue;
    any = true;
    const json j = read_json(p);
    out += fmt::format("  {:<16} {}\n", j["suite"].get<std::string>(), j["pass"].get<bool>() ? "pass" : "fail");
  }
  if (!any) throw ConfigError("no results under " + root.string());
  write_text(root / "report.txt", out);
  return out;
}

}  // namespace ppe::harness

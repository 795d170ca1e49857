#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/harness/check.hpp"
#include "ppe/harness/output.hpp"
#include "ppe/harness/report.hpp"
#include "ppe/harness/run.hpp"
#include "ppe/harness/sweep.hpp"

using namespace ppe;
using namespace ppe::harness;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "config file (flat key = value)");
  cmd->add_option("-s,--seed", c.seed, "override the random seed");
  cmd->add_option("--set", c.overrides, "override keys, as key=value (repeatable)");
}

RunConfig load(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.seed) cfg.seed = *c.seed;
  if (const char* root = std::getenv("PPE_OUTPUT_ROOT"); root && *root) cfg.output_dir = root;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-domain pollutant transport: anisotropic and hydrostatic solvers with verification tools"};
  app.require_subcommand(1);

  Common run_opts, sweep_opts, check_opts, report_opts, config_opts;
  auto* run = app.add_subcommand("run", "one solver run with monitors");
  add_common(run, run_opts);
  auto* sweep = app.add_subcommand("sweep", "eps sweep against the hydrostatic limit");
  add_common(sweep, sweep_opts);
  bool with_mu = false;
  sweep->add_flag("--mu", with_mu, "run the mu regularisation sweep instead");
  auto* check = app.add_subcommand("check", "property suites, JSON verdicts");
  add_common(check, check_opts);
  std::vector<std::string> suites;
  check->add_option("suite", suites, "suite names or 'all'")->required();
  auto* report = app.add_subcommand("report", "summarise persisted results");
  add_common(report, report_opts);
  auto* show = app.add_subcommand("config", "print the canonical config and its hash");
  add_common(show, config_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const RunConfig cfg = load(run_opts);
      const RunRecord r = cmd_run(cfg);
      std::cout << r.to_json().dump(2) << '\n';
      std::cerr << "wall time " << r.wall_seconds << " s, output in " << run_directory(cfg).string() << '\n';
      return r.pass() ? 0 : 1;
    }
    if (*sweep) {
      const RunConfig cfg = load(sweep_opts);
      if (with_mu) {
        const MuSweepReport r = cmd_mu_sweep(cfg);
        const auto dir = std::filesystem::path(cfg.output_dir) / cfg.experiment_id / "mu_sweep";
        ensure_directory(dir);
        write_json(dir / "mu_sweep.json", r.to_json());
        std::cout << r.to_json().dump(2) << '\n';
        return r.strictly_decreasing ? 0 : 1;
      }
      const SweepReport r = cmd_sweep(cfg);
      write_sweep(cfg, r);
      std::cout << r.summary_table();
      return r.partial ? 1 : 0;
    }
    if (*check) {
      const RunConfig cfg = load(check_opts);
      if (suites.size() == 1 && suites[0] == "all") suites = check_suites();
      const auto dir = std::filesystem::path(cfg.output_dir) / cfg.experiment_id / "checks";
      ensure_directory(dir);
      bool pass = true;
      for (const auto& s : suites) {
        const auto j = cmd_check(s, cfg);
        write_json(dir / (s + ".json"), j);
        std::cout << j.dump(2) << '\n';
        pass = pass && j["pass"].get<bool>();
      }
      return pass ? 0 : 1;
    }
    if (*report) {
      std::cout << cmd_report(load(report_opts));
      return 0;
    }
    if (*show) {
      const RunConfig cfg = load(config_opts);
      cfg.validate();
      std::cout << serialize(cfg) << "# hash " << config_hash(cfg) << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ppe/core/errors.hpp"
#include "ppe/harness/check.hpp"
#include "ppe/harness/config.hpp"
#include "ppe/harness/report.hpp"
#include "ppe/harness/run.hpp"
#include "ppe/harness/sweep.hpp"

using namespace ppe;
using namespace ppe::harness;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(const std::string& id) {
  RunConfig c;
  c.n1 = c.n2 = c.n3 = 12;
  c.ctrl.dt = 0.005;
  c.ctrl.t_end = 0.05;
  c.sample_every = 2;
  c.experiment_id = id;
  c.output_dir = (fs::temp_directory_path() / "ppe_harness_test").string();
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(R"(# comment
n = 16
eps = 0.1   # trailing comment
solver = aniso
source_center = 0.25, 0.5, 0
eps_list = 0.4,0.2,0.1
eps_dt_coupling = false
)");
  const RunConfig c = parse_config(in);
  CHECK(c.n1 == 16);
  CHECK(c.n3 == 16);
  CHECK(c.params.eps == 0.1);
  CHECK(c.solver == SolverKind::aniso);
  CHECK(c.source_center[0] == 0.25);
  CHECK(c.eps_list.size() == 3);
  CHECK_FALSE(c.ctrl.eps_dt_coupling);

  std::istringstream unknown("nu = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream bad("eps = abc\n");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  std::istringstream noeq("eps 0.1\n");
  CHECK_THROWS_AS(parse_config(noeq), ConfigError);
  RunConfig d;
  CHECK_THROWS_AS(set_key(d, "solver", "navier"), ConfigError);
  CHECK_THROWS_AS(set_key(d, "source_center", "0.5,0.5"), ConfigError);
}

TEST_CASE("canonical serialization round trip and hash") {
  RunConfig c;
  c.params.eps = 0.1 + 0.2;  // not exactly representable in short decimal
  c.seed = 42;
  c.eps_list = {0.3, 0.2, 0.1};
  std::istringstream in(serialize(c));
  const RunConfig back = parse_config(in);
  CHECK(back == c);
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 16);

  std::istringstream a("eps = 0.5\nseed = 3\nn = 16\n"), b("n = 16\nseed = 3\neps = 0.5\n");
  CHECK(config_hash(parse_config(a)) == config_hash(parse_config(b)));
  RunConfig moved = c;
  moved.output_dir = "elsewhere";
  CHECK(config_hash(moved) == config_hash(c));
  RunConfig other = c;
  other.seed = 43;
  CHECK(config_hash(other) != config_hash(c));
  const auto keys = config_keys();
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("validation") {
  RunConfig c;
  c.solver = SolverKind::aniso;
  c.params.eps = 0.025;
  c.ctrl.dt = 0.01;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(cmd_run(c, false), ConfigError);
  c.solver = SolverKind::hydro;
  CHECK_NOTHROW(c.validate());
  c.n1 = 15;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  RunConfig b;
  b.init_bandlimit = 11;
  CHECK_THROWS_AS(b.validate(), ConfigError);
}

TEST_CASE("zero configuration runs trivially") {
  RunConfig c = small_config("zero");
  c.source = model::SourceKind::zero;
  c.init_amplitude = 0.0;
  for (SolverKind k : {SolverKind::hydro, SolverKind::aniso}) {
    c.solver = k;
    const RunRecord r = cmd_run(c, false);
    CHECK(r.ok);
    CHECK(r.pass());
    CHECK(r.last_stable_time == doctest::Approx(0.05));
  }
}

TEST_CASE("run writes record and csv") {
  RunConfig c = small_config("written");
  c.n1 = c.n2 = c.n3 = 16;
  c.ctrl.dt = 1e-3;
  c.sample_every = 10;
  c.snapshot_every = 2;
  const RunRecord r = cmd_run(c);
  CHECK(r.pass());
  const fs::path dir = run_directory(c);
  CHECK(fs::exists(dir / "record.json"));
  const std::string csv = slurp(dir / "series.csv");
  CHECK(csv.rfind("experiment_id,eps,t,quantity,value\n", 0) == 0);
  CHECK_FALSE(r.snapshots.empty());
  CHECK(fs::exists(dir / r.snapshots.front()));
  const std::string first = slurp(dir / "record.json");
  cmd_run(c);
  CHECK(slurp(dir / "record.json") == first);
  CHECK(cmd_report(c).find("run hydro") != std::string::npos);
}

TEST_CASE("blow-up is recorded as a failed run") {
  RunConfig c = small_config("blowup");
  c.solver = SolverKind::aniso;
  c.init_amplitude = 1e3;
  c.params.nu1 = c.params.nu2 = c.params.nu3 = 1e-6;
  c.ctrl.dt = 0.05;
  c.ctrl.t_end = 1.0;
  c.params.eps = 1.0;
  const RunRecord r = cmd_run(c, false);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.pass());
  CHECK(r.last_stable_time < 1.0);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("sweep preconditions and determinism") {
  RunConfig c = small_config("sweep");
  c.eps_list = {1.0};
  CHECK_THROWS_AS(cmd_sweep(c), ConfigError);
  c.eps_list = {0.1, 0.2, 0.4};
  CHECK_THROWS_AS(cmd_sweep(c), ConfigError);

  c.eps_list = {0.4, 0.2, 0.1};
  const SweepReport a = cmd_sweep(c);
  const SweepReport b = cmd_sweep(c);
  CHECK_FALSE(a.partial);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.fits.count("sup_Uh_l2") == 1);
  for (const auto& m : a.members) CHECK(m.diff.sup_Uh_l2 > 0.0);
  // smaller eps, smaller difference
  CHECK(a.members[2].diff.sup_Uh_l2 < a.members[0].diff.sup_Uh_l2);

  write_sweep(c, a);
  const fs::path dir = fs::path(c.output_dir) / c.experiment_id / "sweep";
  const std::string first = slurp(dir / "sweep.json");
  write_sweep(c, b);
  CHECK(slurp(dir / "sweep.json") == first);
  CHECK(fs::exists(dir / "rate_sup_Uh_l2.dat"));
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("mu sweep") {
  RunConfig c = small_config("mu");
  const MuSweepReport r = cmd_mu_sweep(c);
  CHECK(r.ok);
  CHECK(r.distance.size() == 3);
  CHECK(r.strictly_decreasing);
  c.mu_list = {0.1, 0.2};
  CHECK_THROWS_AS(cmd_mu_sweep(c), ConfigError);
}

TEST_CASE("check suites") {
  const RunConfig c = small_config("checks");
  CHECK_THROWS_AS(cmd_check("nonexistent", c), ConfigError);
  const auto cor = cmd_check("coriolis", c);
  CHECK(cor["pass"].get<bool>());
  CHECK(cor["suite"] == "coriolis");
  CHECK(cmd_check("projection", c)["pass"].get<bool>());
  CHECK(check_suites().size() == 10);
}

#include "ppe/harness/run.hpp"

#include <fmt/format.h>

#include <chrono>

#include "ppe/analysis/apriori.hpp"
#include "ppe/analysis/energy.hpp"
#include "ppe/analysis/monitors.hpp"
#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/norms.hpp"
#include "ppe/core/snapshot.hpp"

namespace ppe::harness {

using nlohmann::json;

bool RunRecord::pass() const {
  if (!ok) return false;
  for (const auto& [name, v] : verdicts.items()) {
    if (!v.value("pass", false)) return false;
  }
  return true;
}

json RunRecord::to_json() const {
  json j;
  j["experiment_id"] = experiment_id;
  j["config_hash"] = config_hash;
  j["solver"] = std::string(to_string(solver));
  j["eps"] = eps;
  j["status"] = ok ? "ok" : "failed";
  j["message"] = message;
  j["last_stable_time"] = last_stable_time;
  j["pass"] = pass();
  j["verdicts"] = verdicts;
  j["snapshots"] = snapshots;
  return j;
}

aniso::AnisoState initial_state(const RunConfig& c, const SpectralGrid& g) {
  return aniso::init_random_state(g, c.seed, c.init_amplitude, c.init_bandlimit);
}

std::filesystem::path run_directory(const RunConfig& c) {
  return std::filesystem::path(c.output_dir) / c.experiment_id / ("run_" + std::string(to_string(c.solver)));
}

namespace {

struct Recorder {
  RunRecord& rec;
  const RunConfig& cfg;
  std::filesystem::path dir;
  bool write;
  int sample = 0;

  void row(double t, const std::string& q, double v) {
    rec.series.push_back({cfg.experiment_id, cfg.params.eps, t, q, v});
  }

  void snapshot(double t, std::initializer_list<std::pair<const char*, const Field*>> fields) {
    if (!write || cfg.snapshot_every == 0 || sample % cfg.snapshot_every) return;
    for (const auto& [name, f] : fields) {
      const std::string file = fmt::format("snap_{:05d}_{}.bin", sample, name);
      write_snapshot(dir / file, *f, name, t);
      rec.snapshots.push_back(file);
    }
  }
};

json energy_verdict(const analysis::EnergyBudget& b) {
  return {{"pass", b.relative_positive_slack() <= 1e-3},
          {"relative_positive_slack", b.relative_positive_slack()},
          {"max_abs_slack", b.max_abs_slack},
          {"scale", b.scale}};
}

void run_aniso(const RunConfig& cfg, const SpectralGrid& g, const model::SourcePair& src, Recorder& r) {
  const auto& p = cfg.params;
  std::vector<analysis::EnergySample> energy;
  analysis::AprioriSeries apriori(p.eps);
  double max_div = 0.0, max_parity = 0.0;
  long step = 0;
  auto observe = [&](const aniso::AnisoState& s) {
    r.rec.last_stable_time = s.t;
    energy.push_back(analysis::energy_sample(s, p, src.s_eps));
    apriori.add(s);
    const double div = divergence_norm(s) / std::max(1.0, aniso::velocity_gradient_norm(s));
    const double par = std::max({parity_residual(s.u1), parity_residual(s.u2), parity_residual(s.u3),
                                 parity_residual(s.c)});
    max_div = std::max(max_div, div);
    max_parity = std::max(max_parity, par);
    if (step++ % cfg.sample_every == 0) {
      const auto& e = energy.back();
      r.row(s.t, "energy", e.energy());
      r.row(s.t, "dissipation", e.dissipation());
      r.row(s.t, "work", e.work());
      r.row(s.t, "u_h_l2", std::hypot(l2_norm(s.u1), l2_norm(s.u2)));
      r.row(s.t, "eps_u3_l2", p.eps * l2_norm(s.u3));
      r.row(s.t, "c_l2", l2_norm(s.c));
      r.row(s.t, "divergence", div);
      r.snapshot(s.t, {{"u1", &s.u1}, {"u2", &s.u2}, {"u3", &s.u3}, {"c", &s.c}});
      ++r.sample;
    }
    return true;
  };
  try {
    aniso::integrate(initial_state(cfg, g), p, src.s_eps, cfg.ctrl, observe);
  } catch (const BlowUpError& e) {
    r.rec.ok = false;
    r.rec.message = e.what();
  } catch (const ConsistencyError& e) {
    r.rec.ok = false;
    r.rec.message = e.what();
  }
  const auto budget = analysis::energy_check(energy);
  for (std::size_t i = 0; i < budget.slack.size(); i += static_cast<std::size_t>(cfg.sample_every)) {
    r.row(budget.samples[i].t, "energy_slack", budget.slack[i]);
  }
  r.rec.verdicts["energy"] = energy_verdict(budget);
  r.rec.verdicts["divergence"] = {{"pass", max_div <= 1e-10}, {"max_relative", max_div}};
  r.rec.verdicts["parity"] = {{"pass", max_parity <= 1e-10}, {"max_residual", max_parity}};
  json ap = json::object();
  const auto values = apriori.values();
  for (std::size_t i = 0; i < analysis::apriori_count; ++i) ap[std::string(analysis::apriori_names()[i])] = values[i];
  r.rec.verdicts["apriori"] = {{"pass", true}, {"values", ap}};
}

void run_hydro(const RunConfig& cfg, const SpectralGrid& g, const model::SourcePair& src, Recorder& r) {
  const auto& p = cfg.params;
  const aniso::AnisoState init = initial_state(cfg, g);
  const hydro::HydroState s0 = hydro::make_state(init.u1, init.u2, init.c);
  std::vector<analysis::BudgetSample> budget;
  std::vector<double> t, linf;
  double max_parity = 0.0, max_residual = 0.0;
  long step = 0;
  auto observe = [&](const hydro::HydroState& s) {
    r.rec.last_stable_time = s.t;
    budget.push_back(analysis::budget_sample(s, src.s_limit, p.k3));
    t.push_back(s.t);
    linf.push_back(analysis::physical_linf(s.c));
    max_parity = std::max({max_parity, parity_residual(s.u1), parity_residual(s.u2), parity_residual(s.c)});
    max_residual = std::max(max_residual, hydro::barotropic_residual(s.u1, s.u2));
    if (step++ % cfg.sample_every == 0) {
      r.row(s.t, "u_h_l2", std::hypot(l2_norm(s.u1), l2_norm(s.u2)));
      r.row(s.t, "u3_l2", l2_norm(s.u3));
      r.row(s.t, "c_l2", l2_norm(s.c));
      r.row(s.t, "c_linf_physical", linf.back());
      r.row(s.t, "slab_mass", budget.back().mass);
      r.snapshot(s.t, {{"u1", &s.u1}, {"u2", &s.u2}, {"u3", &s.u3}, {"c", &s.c}});
      ++r.sample;
    }
    return true;
  };
  try {
    hydro::integrate_hydro(s0, p, src.s_limit, cfg.ctrl, cfg.hydro, observe);
  } catch (const BlowUpError& e) {
    r.rec.ok = false;
    r.rec.message = e.what();
  } catch (const ConsistencyError& e) {
    r.rec.ok = false;
    r.rec.message = e.what();
  }
  const auto bv = analysis::budget_check(budget);
  r.rec.verdicts["mass_budget"] = {{"pass", bv.relative() <= 1e-4},
                                   {"max_defect", bv.max_defect},
                                   {"relative_defect", bv.relative()}};
  const auto mp = analysis::max_principle_check(t, linf, analysis::physical_linf(s0.c),
                                                analysis::slab_linf(src.s_limit));
  r.rec.verdicts["max_principle"] = {{"pass", mp.pass}, {"worst_margin", mp.worst_margin}};
  r.rec.verdicts["parity"] = {{"pass", max_parity <= 1e-10}, {"max_residual", max_parity}};
  r.rec.verdicts["barotropic"] = {{"pass", max_residual <= 1e-10}, {"max_residual", max_residual}};
}

}  // namespace

RunRecord cmd_run(const RunConfig& cfg, bool write) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const SpectralGrid g = cfg.grid();
  const model::SourcePair src = model::build_source(cfg.source_spec(g), g);
  RunRecord rec;
  rec.experiment_id = cfg.experiment_id;
  rec.config_hash = config_hash(cfg);
  rec.solver = cfg.solver;
  rec.eps = cfg.params.eps;
  const auto dir = run_directory(cfg);
  if (write) ensure_directory(dir);
  Recorder r{rec, cfg, dir, write};
  if (cfg.solver == SolverKind::aniso) {
    run_aniso(cfg, g, src, r);
  } else {
    run_hydro(cfg, g, src, r);
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (write) {
    write_json(dir / "record.json", rec.to_json());
    write_csv(dir / "series.csv", rec.series);
    write_text(dir / "config.txt", serialize(cfg));
  }
  return rec;
}

}  // namespace ppe::harness

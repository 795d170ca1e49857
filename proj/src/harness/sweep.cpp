#include "ppe/harness/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <future>
#include <set>

#include "ppe/analysis/monitors.hpp"
#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/norms.hpp"
#include "ppe/harness/output.hpp"
#include "ppe/harness/run.hpp"
#include "ppe/hydro/solver.hpp"

namespace ppe::harness {

using nlohmann::json;

namespace {

void check_eps_list(const std::vector<double>& eps) {
  if (eps.size() < 3) throw ConfigError("an eps sweep needs at least three values");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw ConfigError("eps values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ConfigError("eps values must be strictly descending");
  }
}

/// Everything but eps, so sweep members share one fingerprint.
std::string fingerprint(RunConfig c) {
  c.params.eps = 1.0;
  c.eps_list.clear();
  c.solver = SolverKind::aniso;
  return config_hash(c);
}

SweepMember run_member(const RunConfig& base, double eps, const std::vector<hydro::HydroState>& hydro_traj) {
  RunConfig cfg = base;
  cfg.params.eps = eps;
  cfg.solver = SolverKind::aniso;
  cfg.validate();
  const SpectralGrid g = cfg.grid();
  const model::SourcePair src = model::build_source(cfg.source_spec(g), g);
  const auto& p = cfg.params;

  SweepMember m;
  m.eps = eps;
  analysis::DiffAccumulator diff(eps);
  analysis::AprioriSeries apriori(eps);
  std::vector<analysis::EnergySample> energy;
  long step = 0;
  std::size_t k = 0;
  auto observe = [&](const aniso::AnisoState& s) {
    m.last_stable_time = s.t;
    energy.push_back(analysis::energy_sample(s, p, src.s_eps));
    apriori.add(s);
    m.max_divergence = std::max(m.max_divergence, aniso::divergence_norm(s) / std::max(1.0, aniso::velocity_gradient_norm(s)));
    m.max_parity = std::max({m.max_parity, parity_residual(s.u1), parity_residual(s.u2),
                             parity_residual(s.u3), parity_residual(s.c)});
    if (step++ % cfg.sample_every == 0) {
      if (k >= hydro_traj.size()) return false;
      diff.add(s, hydro_traj[k++]);
    }
    return true;
  };
  try {
    aniso::integrate(initial_state(cfg, g), p, src.s_eps, cfg.ctrl, observe);
  } catch (const BlowUpError& e) {
    m.ok = false;
    m.message = e.what();
  } catch (const ConsistencyError& e) {
    m.ok = false;
    m.message = e.what();
  }
  if (m.ok && k != hydro_traj.size()) {
    m.ok = false;
    m.message = "aniso run ended before the hydrostatic reference";
  }
  m.diff = diff.finish();
  m.diff.run_id = fmt::format("{}-eps{}", cfg.experiment_id, eps);
  m.apriori = {eps, fingerprint(cfg), apriori.values()};
  const analysis::EnergyBudget b = analysis::energy_check(energy);
  m.energy_relative_slack = b.relative_positive_slack();
  m.energy_max_abs_slack = b.max_abs_slack;
  return m;
}

}  // namespace

std::vector<analysis::DiffRecord> SweepReport::records() const {
  std::vector<analysis::DiffRecord> out;
  for (const auto& m : members) {
    if (m.ok) out.push_back(m.diff);
  }
  return out;
}

SweepReport cmd_sweep(const RunConfig& base) {
  check_eps_list(base.eps_list);
  RunConfig hc = base;
  hc.solver = SolverKind::hydro;
  hc.validate();
  for (double eps : base.eps_list) {
    RunConfig ac = base;
    ac.params.eps = eps;
    ac.solver = SolverKind::aniso;
    ac.validate();
  }

  SweepReport rep;
  rep.experiment_id = base.experiment_id;
  rep.config_hash = config_hash(base);

  // the hydrostatic source is the eps -> 0 limit, independent of eps
  const SpectralGrid g = hc.grid();
  const model::SourcePair src = model::build_source(hc.source_spec(g), g);
  const aniso::AnisoState init = initial_state(hc, g);
  std::vector<hydro::HydroState> traj;
  std::vector<analysis::BudgetSample> budget;
  std::vector<double> t, linf;
  long step = 0;
  auto observe = [&](const hydro::HydroState& s) {
    budget.push_back(analysis::budget_sample(s, src.s_limit, hc.params.k3));
    t.push_back(s.t);
    linf.push_back(analysis::physical_linf(s.c));
    if (step++ % hc.sample_every == 0) traj.push_back(s);
    return true;
  };
  try {
    hydro::integrate_hydro(hydro::make_state(init.u1, init.u2, init.c), hc.params, src.s_limit, hc.ctrl,
                           hc.hydro, observe);
  } catch (const BlowUpError& e) {
    rep.hydro_ok = false;
    rep.hydro_message = e.what();
  } catch (const ConsistencyError& e) {
    rep.hydro_ok = false;
    rep.hydro_message = e.what();
  }
  rep.hydro_mass_defect = analysis::budget_check(budget).relative();
  const auto mp = analysis::max_principle_check(t, linf, analysis::physical_linf(init.c),
                                                analysis::slab_linf(src.s_limit));
  rep.hydro_max_principle = mp.pass;
  rep.hydro_max_principle_margin = mp.worst_margin;

  std::vector<std::future<SweepMember>> jobs;
  for (double eps : base.eps_list) {
    jobs.push_back(std::async(std::launch::async, [&base, eps, &traj] { return run_member(base, eps, traj); }));
  }
  for (auto& j : jobs) rep.members.push_back(j.get());

  rep.partial = !rep.hydro_ok;
  std::vector<analysis::AprioriSummary> ap;
  for (const auto& m : rep.members) {
    if (!m.ok) rep.partial = true;
    if (m.ok) ap.push_back(m.apriori);
  }
  const auto recs = rep.records();
  if (rep.hydro_ok && recs.size() >= 3) {
    for (auto key : analysis::diff_keys()) {
      try {
        rep.fits[std::string(key)] = analysis::fit_rate(recs, key);
      } catch (const ContractError&) {
        // zero norms (for instance a zero-data sweep) have no log-log fit
      }
    }
    rep.apriori = analysis::apriori_check(ap);
  }
  return rep;
}

json SweepReport::to_json() const {
  json j;
  j["experiment_id"] = experiment_id;
  j["config_hash"] = config_hash;
  j["partial"] = partial;
  j["hydro"] = {{"ok", hydro_ok},
                {"message", hydro_message},
                {"mass_budget_relative_defect", hydro_mass_defect},
                {"max_principle", hydro_max_principle},
                {"max_principle_worst_margin", hydro_max_principle_margin}};
  json ms = json::array();
  for (const auto& m : members) {
    json d;
    for (auto key : analysis::diff_keys()) d[std::string(key)] = m.diff.get(key);
    json ap;
    for (std::size_t i = 0; i < analysis::apriori_count; ++i) {
      ap[std::string(analysis::apriori_names()[i])] = m.apriori.values[i];
    }
    ms.push_back({{"eps", m.eps},
                  {"ok", m.ok},
                  {"message", m.message},
                  {"last_stable_time", m.last_stable_time},
                  {"diff", d},
                  {"apriori", ap},
                  {"energy_relative_positive_slack", m.energy_relative_slack},
                  {"energy_max_abs_slack", m.energy_max_abs_slack},
                  {"max_divergence", m.max_divergence},
                  {"max_parity_residual", m.max_parity}});
  }
  j["members"] = ms;
  json fj = json::object();
  for (const auto& [key, f] : fits) {
    fj[key] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
  }
  j["fits"] = fj;
  json ap = json::object();
  for (std::size_t i = 0; i < analysis::apriori_count; ++i) {
    ap[std::string(analysis::apriori_names()[i])] = {
        {"small_max", apriori.small_max[i]}, {"ref_max", apriori.ref_max[i]}, {"ratio", apriori.ratio[i]}};
  }
  j["apriori"] = {{"pass", apriori.pass}, {"quantities", ap}};
  return j;
}

std::string SweepReport::summary_table() const {
  std::string s = fmt::format("{:<16}", "eps");
  for (auto key : analysis::diff_keys()) s += fmt::format("{:>16}", key);
  s += "\n";
  for (const auto& m : members) {
    s += fmt::format("{:<16}", format_double(m.eps));
    for (auto key : analysis::diff_keys()) s += fmt::format("{:>16.6e}", m.diff.get(key));
    if (!m.ok) s += "  FAILED: " + m.message;
    s += "\n";
  }
  s += fmt::format("{:<16}", "slope");
  for (auto key : analysis::diff_keys()) {
    const auto it = fits.find(std::string(key));
    s += it == fits.end() ? fmt::format("{:>16}", "-") : fmt::format("{:>16.4f}", it->second.slope);
  }
  s += "\n";
  s += fmt::format("{:<16}", "r^2");
  for (auto key : analysis::diff_keys()) {
    const auto it = fits.find(std::string(key));
    s += it == fits.end() ? fmt::format("{:>16}", "-") : fmt::format("{:>16.4f}", it->second.r_squared);
  }
  s += "\n";
  if (partial) s += "partial report: at least one run failed\n";
  return s;
}

void write_sweep(const RunConfig& c, const SweepReport& r) {
  const auto dir = std::filesystem::path(c.output_dir) / c.experiment_id / "sweep";
  ensure_directory(dir);
  write_json(dir / "sweep.json", r.to_json());
  std::vector<CsvRow> rows;
  for (const auto& m : r.members) {
    for (auto key : analysis::diff_keys()) {
      rows.push_back({r.experiment_id, m.eps, m.last_stable_time, std::string(key), m.diff.get(key)});
    }
    for (std::size_t i = 0; i < analysis::apriori_count; ++i) {
      rows.push_back({r.experiment_id, m.eps, m.last_stable_time, std::string(analysis::apriori_names()[i]),
                      m.apriori.values[i]});
    }
  }
  write_csv(dir / "sweep.csv", rows);
  write_text(dir / "summary.txt", r.summary_table());
  write_text(dir / "config.txt", serialize(c));
  for (const auto& [key, f] : r.fits) {
    write_columns(dir / ("rate_" + key + ".dat"),
                  {"log(eps) log(" + key + ")", fmt::format("slope {} intercept {} r^2 {}", format_double(f.slope),
                                                             format_double(f.intercept), format_double(f.r_squared))},
                  f.points);
  }
}

json MuSweepReport::to_json() const {
  return {{"mu", mu}, {"distance", distance}, {"ok", ok}, {"strictly_decreasing", strictly_decreasing},
          {"max_principle", max_principle}};
}

MuSweepReport cmd_mu_sweep(const RunConfig& base) {
  RunConfig c = base;
  c.solver = SolverKind::hydro;
  c.hydro.mu = 0.0;
  c.validate();
  if (c.mu_list.size() < 2) throw ConfigError("a mu sweep needs at least two values");
  for (std::size_t i = 1; i < c.mu_list.size(); ++i) {
    if (!(c.mu_list[i] < c.mu_list[i - 1]) || !(c.mu_list[i] > 0.0)) {
      throw ConfigError("mu values must be positive and strictly descending");
    }
  }
  const SpectralGrid g = c.grid();
  const model::SourcePair src = model::build_source(c.source_spec(g), g);
  const aniso::AnisoState init = initial_state(c, g);
  const hydro::HydroState s0 = hydro::make_state(init.u1, init.u2, init.c);
  const double c0 = analysis::physical_linf(s0.c), s_inf = analysis::slab_linf(src.s_limit);

  auto trajectory = [&](double mu, bool& ok, bool& mp) {
    hydro::HydroOptions opts{mu};
    std::vector<Field> cs;
    std::vector<double> t, linf;
    long step = 0;
    try {
      hydro::integrate_hydro(s0, c.params, src.s_limit, c.ctrl, opts, [&](const hydro::HydroState& s) {
        t.push_back(s.t);
        linf.push_back(analysis::physical_linf(s.c));
        if (step++ % c.sample_every == 0) cs.push_back(s.c);
        return true;
      });
    } catch (const BlowUpError&) {
      ok = false;
    }
    mp = mp && analysis::max_principle_check(t, linf, c0, s_inf).pass;
    return cs;
  };

  MuSweepReport r;
  r.mu = c.mu_list;
  const auto ref = trajectory(0.0, r.ok, r.max_principle);
  std::vector<std::future<std::tuple<std::vector<Field>, bool, bool>>> jobs;
  for (double mu : c.mu_list) {
    jobs.push_back(std::async(std::launch::async, [&, mu] {
      bool ok = true, mp = true;
      auto cs = trajectory(mu, ok, mp);
      return std::make_tuple(std::move(cs), ok, mp);
    }));
  }
  for (auto& j : jobs) {
    auto [cs, ok, mp] = j.get();
    r.ok = r.ok && ok && cs.size() == ref.size();
    r.max_principle = r.max_principle && mp;
    r.distance.push_back(cs.size() == ref.size() ? analysis::linf_l2_difference(cs, ref) : -1.0);
  }
  r.strictly_decreasing = r.ok;
  for (std::size_t i = 1; i < r.distance.size(); ++i) {
    if (!(r.distance[i] < r.distance[i - 1])) r.strictly_decreasing = false;
  }
  return r;
}

json DtStudy::to_json() const {
  json rel = json::array(), abs = json::array();
  for (const auto& b : budgets) {
    rel.push_back(b.relative_positive_slack());
    abs.push_back(b.max_abs_slack);
  }
  return {{"dt", dt}, {"relative_positive_slack", rel}, {"max_abs_slack", abs},
          {"ratios", order.ratios}, {"min_ratio", order.min_ratio}};
}

DtStudy energy_dt_study(const RunConfig& base, int levels) {
  if (levels < 2) throw ConfigError("a dt study needs at least two levels");
  RunConfig c = base;
  c.solver = SolverKind::aniso;
  c.validate();
  const SpectralGrid g = c.grid();
  const model::SourcePair src = model::build_source(c.source_spec(g), g);
  const aniso::AnisoState init = initial_state(c, g);
  DtStudy st;
  std::vector<std::future<analysis::EnergyBudget>> jobs;
  for (int l = 0; l < levels; ++l) {
    StepControl ctrl = c.ctrl;
    ctrl.dt = c.ctrl.dt / static_cast<double>(1 << l);
    st.dt.push_back(ctrl.dt);
    jobs.push_back(std::async(std::launch::async, [&, ctrl] {
      std::vector<analysis::EnergySample> samples;
      aniso::integrate(init, c.params, src.s_eps, ctrl, [&](const aniso::AnisoState& s) {
        samples.push_back(analysis::energy_sample(s, c.params, src.s_eps));
        return true;
      });
      return analysis::energy_check(samples);
    }));
  }
  for (auto& j : jobs) st.budgets.push_back(j.get());
  st.order = analysis::slack_order(st.budgets);
  return st;
}

}  // namespace ppe::harness

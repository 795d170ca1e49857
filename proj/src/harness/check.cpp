#include "ppe/harness/check.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "ppe/analysis/energy.hpp"
#include "ppe/analysis/ladyzhenskaya.hpp"
#include "ppe/analysis/mms.hpp"
#include "ppe/analysis/monitors.hpp"
#include "ppe/aniso/solver.hpp"
#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/norms.hpp"
#include "ppe/harness/run.hpp"
#include "ppe/harness/sweep.hpp"
#include "ppe/hydro/solver.hpp"
#include "ppe/model/source.hpp"

namespace ppe::harness {

using nlohmann::json;

namespace {

struct Bundle {
  json checks = json::array();
  void add(const std::string& name, bool pass, double value, double limit) {
    checks.push_back({{"name", name}, {"pass", pass}, {"value", value}, {"limit", limit}});
  }
  void at_most(const std::string& name, double value, double limit) { add(name, value <= limit, value, limit); }
  void at_least(const std::string& name, double value, double limit) { add(name, value >= limit, value, limit); }
};

void parity_suite(const RunConfig& c, Bundle& b) {
  RunConfig a = c;
  a.solver = SolverKind::aniso;
  RunConfig h = c;
  h.solver = SolverKind::hydro;
  const RunRecord ra = cmd_run(a, false);
  const RunRecord rh = cmd_run(h, false);
  b.at_most("aniso_parity_residual", ra.verdicts["parity"]["max_residual"].get<double>(), 1e-10);
  b.at_most("hydro_parity_residual", rh.verdicts["parity"]["max_residual"].get<double>(), 1e-10);
  b.add("runs_completed", ra.ok && rh.ok, ra.ok && rh.ok, 1.0);
  // diagnosed u3 is odd and vanishes on z = -a and z = 0
  const SpectralGrid g = c.grid();
  const aniso::AnisoState s = initial_state(c, g);
  const Field u3 = hydro::diagnose_u3(s.u1, s.u2);
  double wall = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      wall = std::max({wall, std::abs(u3(i1, i2, 0)), std::abs(u3(i1, i2, g.n3() / 2))});
    }
  b.at_most("diagnosed_u3_parity_residual", parity_residual(u3), 1e-10);
  b.at_most("diagnosed_u3_wall_value", wall / std::max(1.0, u3.max_abs()), 1e-10);
}

void projection_suite(const RunConfig& c, Bundle& b) {
  const SpectralGrid g = c.grid();
  const aniso::AnisoState s = initial_state(c, g);
  // a field with a gradient part and a solenoidal part
  const Field q = multiply(s.u1, s.u2).with_parity(Parity::none);
  Field f1 = derive(q, 0, 1) + s.u1, f2 = derive(q, 1, 1) + s.u2, f3 = derive(q, 2, 1) + s.u3;
  const auto wp = aniso::project_weighted(f1, f2, f3, c.params.eps);
  const Field div = derive(wp.g1, 0, 1) + derive(wp.g2, 1, 1) + derive(wp.g3, 2, 1);
  const double scale = std::max(1.0, std::sqrt(inner(f1, f1) + inner(f2, f2) + inner(f3, f3)));
  b.at_most("weighted_divergence", l2_norm(div) / scale, 1e-10);
  const auto again = aniso::project_weighted(wp.g1, wp.g2, wp.g3, c.params.eps);
  b.at_most("weighted_idempotence", l2_norm(again.g1 - wp.g1) + l2_norm(again.g2 - wp.g2) + l2_norm(again.g3 - wp.g3),
            1e-10 * scale);
  const auto bp = hydro::project_barotropic(f1, f2);
  b.at_most("barotropic_residual", hydro::barotropic_residual(bp.g1, bp.g2) / scale, 1e-10);
}

void energy_suite(const RunConfig& c, Bundle& b) {
  const DtStudy st = energy_dt_study(c, 3);
  b.at_most("relative_positive_slack_default_dt", st.budgets.front().relative_positive_slack(), 1e-3);
  b.at_least("slack_ratio_per_halving", st.order.min_ratio, 4.0);
}

void ladyzhenskaya_suite(const RunConfig& c, Bundle& b) {
  const SpectralGrid g(16, 16, 16, c.params.a);
  const auto s = analysis::ladyzhenskaya_sample(g, 1000, c.seed);
  b.at_most("spread_variant_1", s.spread1(), 10.0);
  b.at_most("spread_variant_2", s.spread2(), 10.0);
  const auto z = analysis::ladyzhenskaya_sample(g, 200, c.seed + 1, true);
  b.at_most("spread_z_independent_h", std::max(z.spread1(), z.spread2()), 10.0);
}

void mms_suite(const RunConfig& c, Bundle& b) {
  model::PhysicalParams p = c.params;
  p.eps = 0.5;
  p.nu1 = p.nu2 = p.nu3 = 0.05;
  p.k1 = p.k2 = p.k3 = 0.05;
  const auto pb = analysis::mms::default_problem(p.a);
  const hydro::HydroOptions opts{0.05};
  StepControl c1, c2;
  c1.dt = 0.01;
  c2.dt = 0.005;
  c1.t_end = c2.t_end = 0.1;
  const SpectralGrid g32(32, 32, 32, p.a);
  b.at_least("aniso_temporal_order",
             std::log2(analysis::mms::aniso_error(pb, g32, p, c1) / analysis::mms::aniso_error(pb, g32, p, c2)), 1.9);
  b.at_least("hydro_temporal_order",
             std::log2(analysis::mms::hydro_error(pb, g32, p, c1, opts) / analysis::mms::hydro_error(pb, g32, p, c2, opts)),
             1.9);
  StepControl cs;
  cs.dt = 1e-3;
  cs.t_end = 0.02;
  const SpectralGrid g16(16, 16, 16, p.a), g24(24, 24, 24, p.a);
  b.at_least("aniso_spatial_drop_16_24",
             analysis::mms::aniso_error(pb, g16, p, cs) / analysis::mms::aniso_error(pb, g24, p, cs), 10.0);
  b.at_least("hydro_spatial_drop_16_24",
             analysis::mms::hydro_error(pb, g16, p, cs, opts) / analysis::mms::hydro_error(pb, g24, p, cs, opts), 10.0);
}

void mollifier_suite(const RunConfig&, Bundle& b) {
  const SpectralGrid g(256, 256, 128, 0.25);
  const double m = model::mollifier_mass();
  double worst = 0.0;
  for (double eps : {0.2, 0.15, 0.1}) {
    const Field d = model::mollified_delta(g, eps, {0.5, 0.5, 0.0});
    double s = 0.0;
    for (double v : d.values()) s += v;
    worst = std::max(worst, std::abs(s * g.cell_volume() / m - 1.0));
  }
  b.at_most("mass_deviation", worst, 1e-6);
}

void max_principle_suite(const RunConfig& c, Bundle& b) {
  RunConfig h = c;
  h.solver = SolverKind::hydro;
  const RunRecord r = cmd_run(h, false);
  b.add("bound_holds", r.verdicts["max_principle"]["pass"].get<bool>(),
        r.verdicts["max_principle"]["worst_margin"].get<double>(), 0.0);

  // persistent strong source from rest: the bound without the t term must fail
  RunConfig n = h;
  n.init_amplitude = 0.0;
  n.source_amplitude = 500.0;
  const SpectralGrid g = n.grid();
  const auto src = model::build_source(n.source_spec(g), g);
  const aniso::AnisoState init = initial_state(n, g);
  std::vector<double> t, linf;
  hydro::integrate_hydro(hydro::make_state(init.u1, init.u2, init.c), n.params, src.s_limit, n.ctrl, n.hydro,
                         [&](const hydro::HydroState& s) {
                           t.push_back(s.t);
                           linf.push_back(analysis::physical_linf(s.c));
                           return true;
                         });
  const double c0 = analysis::physical_linf(init.c), s_inf = analysis::slab_linf(src.s_limit);
  const auto with_t = analysis::max_principle_check(t, linf, c0, s_inf);
  const auto without_t = analysis::max_principle_check(t, linf, c0, s_inf, 1e-6, false);
  b.add("strong_source_bound_holds", with_t.pass, with_t.worst_margin, 0.0);
  b.add("negative_control_fails_without_t_term", !without_t.pass, without_t.first_violation, 0.0);
}

void mu_sweep_suite(const RunConfig& c, Bundle& b) {
  const MuSweepReport r = cmd_mu_sweep(c);
  b.add("runs_completed", r.ok, r.ok, 1.0);
  b.add("distance_strictly_decreasing", r.strictly_decreasing, r.distance.empty() ? 0.0 : r.distance.back(), 0.0);
  b.add("max_principle", r.max_principle, r.max_principle, 1.0);
}

void coriolis_suite(const RunConfig& c, Bundle& b) {
  const SpectralGrid g = c.grid();
  const aniso::AnisoState s = initial_state(c, g);
  const Field w = aniso::coriolis_work(s, c.params);
  const auto f = aniso::coriolis(s, c.params);
  const double scale = std::max(1e-300, std::sqrt(inner(s.u1, s.u1) + inner(s.u2, s.u2) + inner(s.u3, s.u3)) *
                                            std::sqrt(inner(f.c1, f.c1) + inner(f.c2, f.c2) + inner(f.c3, f.c3)));
  b.at_most("relative_work", std::abs(inner(w, Field(g, std::vector<double>(g.size(), 1.0), Parity::none))) / scale,
            1e-12);
  b.at_most("relative_pointwise_work", w.max_abs() / std::max(1e-300, f.c1.max_abs() * s.u1.max_abs() +
                                                                            f.c2.max_abs() * s.u2.max_abs() +
                                                                            f.c3.max_abs() * s.u3.max_abs()),
            1e-12);
}

void budget_suite(const RunConfig& c, Bundle& b) {
  RunConfig h = c;
  h.solver = SolverKind::hydro;
  h.validate();
  const SpectralGrid g = h.grid();
  const auto src = model::build_source(h.source_spec(g), g);
  const aniso::AnisoState init = initial_state(h, g);
  std::vector<analysis::BudgetVerdict> v;
  for (int l = 0; l < 3; ++l) {
    StepControl ctrl = h.ctrl;
    ctrl.dt = h.ctrl.dt / static_cast<double>(1 << l);
    std::vector<analysis::BudgetSample> samples;
    hydro::integrate_hydro(hydro::make_state(init.u1, init.u2, init.c), h.params, src.s_limit, ctrl, h.hydro,
                           [&](const hydro::HydroState& s) {
                             samples.push_back(analysis::budget_sample(s, src.s_limit, h.params.k3));
                             return true;
                           });
    v.push_back(analysis::budget_check(samples));
  }
  b.at_most("relative_defect", v.back().relative(), 1e-4);
  b.at_least("time_order", analysis::budget_order(v), 1.9);
}

const std::map<std::string, std::function<void(const RunConfig&, Bundle&)>>& registry() {
  static const std::map<std::string, std::function<void(const RunConfig&, Bundle&)>> r{
      {"parity", parity_suite},
      {"projection", projection_suite},
      {"energy", energy_suite},
      {"ladyzhenskaya", ladyzhenskaya_suite},
      {"mms", mms_suite},
      {"mollifier", mollifier_suite},
      {"max_principle", max_principle_suite},
      {"mu_sweep", mu_sweep_suite},
      {"coriolis", coriolis_suite},
      {"budget", budget_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names{"parity",   "projection",    "coriolis", "mollifier", "budget",
                                              "energy",   "max_principle", "mu_sweep", "mms",       "ladyzhenskaya"};
  return names;
}

json cmd_check(const std::string& suite, const RunConfig& c) {
  const auto& r = registry();
  const auto it = r.find(suite);
  if (it == r.end()) throw ConfigError("unknown check suite: '" + suite + "'");
  Bundle b;
  it->second(c, b);
  bool pass = true;
  for (const auto& ch : b.checks) pass = pass && ch["pass"].get<bool>();
  return {{"suite", suite}, {"pass", pass}, {"config_hash", config_hash(c)}, {"checks", b.checks}};
}

}  // namespace ppe::harness

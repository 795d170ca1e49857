#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ppe/analysis/apriori.hpp"
#include "ppe/analysis/diff.hpp"
#include "ppe/analysis/energy.hpp"
#include "ppe/analysis/ladyzhenskaya.hpp"
#include "ppe/analysis/mms.hpp"
#include "ppe/analysis/monitors.hpp"
#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/model/source.hpp"
#include "test_util.hpp"

using namespace ppe;
using namespace ppe::analysis;
constexpr double pi = std::numbers::pi;

namespace {

model::PhysicalParams base_params(double eps) {
  model::PhysicalParams p;
  p.eps = eps;
  p.nu1 = p.nu2 = p.nu3 = 0.05;
  p.k1 = p.k2 = p.k3 = 0.05;
  p.f = 1.0;
  return p;
}

EnergyBudget run_energy(const model::PhysicalParams& p, const Field& source, double dt, double t_end) {
  const SpectralGrid& g = source.grid();
  StepControl ctrl;
  ctrl.dt = dt;
  ctrl.t_end = t_end;
  std::vector<EnergySample> samples;
  aniso::integrate(aniso::init_random_state(g, 7, 0.5, 3), p, source, ctrl, [&](const aniso::AnisoState& s) {
    samples.push_back(energy_sample(s, p, source));
    return true;
  });
  return energy_check(samples);
}

}  // namespace

TEST_CASE("energy terms for explicit fields") {
  const double a = 0.5;
  SpectralGrid g(16, 16, 16, a);
  model::PhysicalParams p = base_params(0.5);
  p.nu1 = 0.1;
  p.k2 = 0.2;
  const double vol = 2 * a;
  aniso::AnisoState s{
      Field::from_function(g, [](double x1, double, double) { return std::sin(2 * pi * x1); }, Parity::even),
      Field(g, Parity::even), Field(g, Parity::odd),
      Field::from_function(g, [&](double, double x2, double z) { return std::cos(2 * pi * x2) * std::sin(pi * z / a); },
                           Parity::odd),
      Field(g, Parity::even), 0.0};
  const Field src = 2.0 * s.c;
  const EnergySample e = energy_sample(s, p, src);
  CHECK(e.kinetic_h == doctest::Approx(0.25 * vol).epsilon(1e-12));
  CHECK(e.concentration_l2 == doctest::Approx(0.125 * vol).epsilon(1e-12));
  CHECK(e.kinetic_3_weighted == doctest::Approx(0.0));
  CHECK(e.dissipation_visc_h == doctest::Approx(0.1 * 4 * pi * pi * 0.5 * vol).epsilon(1e-12));
  CHECK(e.source_work == doctest::Approx(2 * 0.25 * vol).epsilon(1e-12));
  CHECK(e.shift_work == doctest::Approx(0.0));
  CHECK(e.dissipation_c == doctest::Approx((0.2 * 4 * pi * pi + 0.05 * pi * pi / (a * a)) * 0.25 * vol).epsilon(1e-12));
}

TEST_CASE("pure diffusion closes the energy balance") {
  SpectralGrid g(16, 16, 16, 1.0);
  model::PhysicalParams p = base_params(0.5);
  p.f = 0.0;
  aniso::AnisoState s{Field(g, Parity::even), Field(g, Parity::even), Field(g, Parity::odd),
                      Field::from_function(g, [](double, double x2, double z) { return std::sin(2 * pi * x2) * std::sin(pi * z); },
                                           Parity::odd),
                      Field(g, Parity::even), 0.0};
  // c stays a decaying eigenmode, so only the trapezoid error remains
  StepControl ctrl;
  ctrl.dt = 1e-3;
  ctrl.t_end = 0.2;
  std::vector<EnergySample> samples;
  aniso::integrate(s, p, Field(g, Parity::odd), ctrl, [&](const aniso::AnisoState& st) {
    samples.push_back(energy_sample(st, p, Field(g, Parity::odd)));
    return true;
  });
  const EnergyBudget b = energy_check(samples);
  CHECK(b.max_abs_slack / b.scale < 1e-6);
}

TEST_CASE("energy inequality along a forced run") {
  SpectralGrid g(16, 16, 16, 1.0);
  const model::PhysicalParams p = base_params(0.5);
  const Field src = model::default_kernel(g);
  const EnergyBudget coarse = run_energy(p, src, 2e-3, 0.1);
  const EnergyBudget fine = run_energy(p, src, 1e-3, 0.1);
  CHECK(fine.relative_positive_slack() <= 1e-3);
  const SlackOrder order = slack_order({coarse, fine});
  CHECK(order.min_ratio > 3.0);
}

TEST_CASE("energy check rejects nonuniform samples") {
  std::vector<EnergySample> s(3);
  s[0].t = 0.0;
  s[1].t = 0.1;
  s[2].t = 0.3;
  CHECK_THROWS_AS(energy_check(s), ContractError);
}

TEST_CASE("rate fits recover exact power laws") {
  const std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
  for (double slope : {1.0, 2.0}) {
    std::vector<double> v;
    for (double e : eps) v.push_back(3.0 * std::pow(e, slope));
    const RateFit f = fit_rate(eps, v);
    CHECK(std::abs(f.slope - slope) < 1e-12);
    CHECK(std::abs(f.intercept - std::log(3.0)) < 1e-12);
    CHECK(f.r_squared == doctest::Approx(1.0));
  }
  CHECK_THROWS(fit_rate({0.1, 0.2}, {1.0, 2.0}));
  CHECK_THROWS(fit_rate({0.1, 0.2, 0.3}, {1.0, 0.0, 2.0}));
}

TEST_CASE("difference norms") {
  SpectralGrid g(16, 16, 16, 1.0);
  const aniso::AnisoState a = aniso::init_random_state(g, 3, 1.0, 3);
  const hydro::HydroState h{a.u1, a.u2, a.c, Field(g, Parity::even), 0.0, a.u3};
  aniso::AnisoState a1 = a;
  hydro::HydroState h1 = h;
  a1.t = h1.t = 0.1;
  const DiffRecord zero = diff_norms({a, a1}, {h, h1}, 0.3);
  for (auto key : diff_keys()) CHECK(zero.get(key) == 0.0);

  aniso::AnisoState b = a;
  b.u1 += Field::from_function(g, [](double x1, double, double) { return 0.01 * std::cos(2 * pi * x1); }, Parity::even);
  const DiffRecord r = diff_norms({b}, {h}, 0.3);
  CHECK(r.sup_Uh_l2 == doctest::Approx(0.01 * std::sqrt(2.0 * 0.5)).epsilon(1e-10));
  CHECK(r.sup_Uh_h1 == doctest::Approx(0.01 * std::sqrt(1.0 * (1 + 4 * pi * pi))).epsilon(1e-10));
  CHECK(r.sup_C_h1 == 0.0);

  aniso::AnisoState late = a;
  late.t = 0.5;
  CHECK_THROWS_AS(diff_norms({late}, {h}, 0.3), ContractError);
}

TEST_CASE("a priori check") {
  auto summary = [](double eps, double scale) {
    AprioriSummary s;
    s.eps = eps;
    s.fingerprint = "x";
    s.values.fill(scale);
    return s;
  };
  // bounded quantities, mildly varying
  std::vector<AprioriSummary> ok{summary(0.4, 1.0), summary(0.2, 1.1), summary(0.1, 1.05), summary(0.05, 1.2)};
  CHECK(apriori_check(ok).pass);
  // 1/eps growth must be flagged
  std::vector<AprioriSummary> bad;
  for (double e : {0.4, 0.2, 0.1, 0.05}) bad.push_back(summary(e, 1.0 / e));
  CHECK_FALSE(apriori_check(bad).pass);
  // decreasing quantities are fine
  std::vector<AprioriSummary> dec;
  for (double e : {0.4, 0.2, 0.1}) dec.push_back(summary(e, e));
  CHECK(apriori_check(dec).pass);

  std::vector<AprioriSummary> mixed = ok;
  mixed[1].fingerprint = "y";
  CHECK_THROWS(apriori_check(mixed));
  CHECK_THROWS(apriori_check({summary(0.4, 1.0), summary(0.2, 1.0)}));
  CHECK(apriori_names().size() == apriori_count);
}

TEST_CASE("a priori series of a state") {
  SpectralGrid g(16, 16, 16, 1.0);
  AprioriSeries series(0.5);
  aniso::AnisoState s = aniso::init_random_state(g, 5, 1.0, 3);
  series.add(s);
  s.t = 0.1;
  series.add(s);
  const auto v = series.values();
  for (double x : v) CHECK(std::isfinite(x));
  // sup of ||u_h||_{L2} for a constant-in-time state equals the norm itself
  CHECK(v[0] > 0.0);
}

TEST_CASE("trilinear inequality on constants") {
  for (double a : {0.25, 1.0, 2.0}) {
    SpectralGrid g(8, 8, 8, a);
    const Field one = Field::from_function(g, [](double, double, double) { return 1.0; });
    const LadyzhenskayaTerms t = ladyzhenskaya_terms(one, one, one);
    CHECK(t.lhs == doctest::Approx(4 * a * a).epsilon(1e-12));
    CHECK(t.lhs / t.rhs1 == doctest::Approx(std::sqrt(2 * a)).epsilon(1e-12));
    CHECK(t.lhs / t.rhs2 == doctest::Approx(std::sqrt(2 * a)).epsilon(1e-12));
  }
}

TEST_CASE("trilinear inequality over random triplets") {
  SpectralGrid g(16, 16, 16, 1.0);
  const LadyzhenskayaStats s = ladyzhenskaya_sample(g, 300, 11);
  CHECK(s.ratio1.size() + static_cast<std::size_t>(s.skipped) == 300);
  CHECK(s.spread1() <= 10.0);
  CHECK(s.spread2() <= 10.0);
  const LadyzhenskayaStats z = ladyzhenskaya_sample(g, 100, 12, true);
  CHECK(z.spread1() <= 10.0);
}

TEST_CASE("slab integral and boundary derivative") {
  const double a = 0.7;
  SpectralGrid g(8, 8, 32, a);
  const Field f = Field::from_function(g, [&](double x1, double, double z) {
    return 2.0 + std::sin(pi * z / a) + std::cos(2 * pi * x1) * std::sin(pi * z / a) + std::cos(2 * pi * z / a);
  });
  CHECK(slab_integral(f) == doctest::Approx(2 * a - 2 * a / pi).epsilon(1e-12));
  for (double z0 : {0.0, -a, -0.3}) {
    CHECK(mean_vertical_derivative(f, z0) ==
          doctest::Approx(pi / a * std::cos(pi * z0 / a) - 2 * pi / a * std::sin(2 * pi * z0 / a)).epsilon(1e-10));
  }
  // the shifted concentration z/a has zero physical excursion
  const Field lin = Field::from_function(g, [&](double, double, double z) { return 0.5 * std::sin(pi * z / a); });
  CHECK(physical_linf(lin) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("slab tracer budget closes") {
  SpectralGrid g(16, 16, 16, 1.0);
  const model::PhysicalParams p = base_params(0.5);
  const hydro::HydroOptions opts{0.05};
  const Field src = model::default_kernel(g);
  auto defect = [&](double dt) {
    StepControl ctrl;
    ctrl.dt = dt;
    ctrl.t_end = 0.1;
    const aniso::AnisoState a0 = aniso::init_random_state(g, 9, 0.5, 3);
    std::vector<BudgetSample> samples;
    hydro::integrate_hydro(hydro::make_state(a0.u1, a0.u2, a0.c), p, src, ctrl, opts, [&](const hydro::HydroState& s) {
      samples.push_back(budget_sample(s, src, p.k3));
      return true;
    });
    return budget_check(samples);
  };
  const std::vector<BudgetVerdict> v{defect(4e-3), defect(2e-3), defect(1e-3)};
  // the dt-independent part is the truncated advective flux at 16^3
  CHECK(v[2].relative() < 1e-3);
  CHECK(budget_order(v) >= 1.9);
}

TEST_CASE("maximum principle monitor") {
  const std::vector<double> t{0.0, 0.5, 1.0};
  const std::vector<double> linf{1.0, 1.6, 2.1};
  const MaxPrincipleVerdict ok = max_principle_check(t, linf, 1.0, 0.5);
  CHECK(ok.pass);
  const MaxPrincipleVerdict no_time = max_principle_check(t, linf, 1.0, 0.5, 1e-6, false);
  CHECK_FALSE(no_time.pass);
  CHECK(no_time.first_violation == doctest::Approx(1.0));
}

TEST_CASE("manufactured jets") {
  using mms::Jet3;
  const double x = 0.37;
  const Jet3 j = mms::exp(0.8 * mms::sin(2 * pi * Jet3::variable(x) + Jet3::constant(0.4)));
  auto f = [](double y) { return std::exp(0.8 * std::sin(2 * pi * y + 0.4)); };
  const double h = 1e-3;
  CHECK(j.d[0] == doctest::Approx(f(x)));
  CHECK(j.d[1] == doctest::Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-5));
  CHECK(j.d[2] == doctest::Approx((f(x + h) - 2 * f(x) + f(x - h)) / (h * h)).epsilon(1e-4));
  CHECK(j.d[3] == doctest::Approx((f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h))
                      .epsilon(1e-4));
}

TEST_CASE("manufactured velocity is admissible") {
  SpectralGrid g(24, 24, 24, 1.0);
  const mms::Problem pb = mms::default_problem(1.0);
  const aniso::AnisoState s = mms::exact_aniso(pb, g, 0.3);
  CHECK(parity_residual(s.u1) < 1e-12);
  CHECK(parity_residual(s.u3) < 1e-12);
  CHECK(parity_residual(s.c) < 1e-12);
  Field div = mms::velocity(pb, g, 0, 0.3, {1, 0, 0});
  div += mms::velocity(pb, g, 1, 0.3, {0, 1, 0});
  div += mms::velocity(pb, g, 2, 0.3, {0, 0, 1});
  CHECK(div.max_abs() < 1e-12);
  const Field dt = mms::velocity(pb, g, 0, 0.3, {0, 0, 0}, true);
  const double h = 1e-5;
  const Field fd = (1.0 / (2 * h)) * (mms::velocity(pb, g, 0, 0.3 + h) - mms::velocity(pb, g, 0, 0.3 - h));
  CHECK(ppe::testing::max_diff(dt, fd) < 1e-6);
}

TEST_CASE("manufactured solutions converge in time") {
  SpectralGrid g(32, 32, 32, 1.0);
  const model::PhysicalParams p = base_params(0.5);
  const mms::Problem pb = mms::default_problem(1.0);
  const hydro::HydroOptions opts{0.05};
  StepControl c1, c2;
  c1.dt = 0.01;
  c2.dt = 0.005;
  c1.t_end = c2.t_end = 0.1;
  const double ea = std::log2(mms::aniso_error(pb, g, p, c1) / mms::aniso_error(pb, g, p, c2));
  const double eh = std::log2(mms::hydro_error(pb, g, p, c1, opts) / mms::hydro_error(pb, g, p, c2, opts));
  CHECK(ea >= 1.9);
  CHECK(eh >= 1.9);
}

TEST_CASE("manufactured solutions converge in space") {
  const model::PhysicalParams p = base_params(0.5);
  const mms::Problem pb = mms::default_problem(1.0);
  const hydro::HydroOptions opts{0.05};
  StepControl c;
  c.dt = 1e-3;
  c.t_end = 0.02;
  SpectralGrid coarse(16, 16, 16, 1.0), fine(24, 24, 24, 1.0);
  CHECK(mms::aniso_error(pb, coarse, p, c) / mms::aniso_error(pb, fine, p, c) >= 10.0);
  CHECK(mms::hydro_error(pb, coarse, p, c, opts) / mms::hydro_error(pb, fine, p, c, opts) >= 10.0);
}

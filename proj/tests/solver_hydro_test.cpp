#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ppe/aniso/solver.hpp"
#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"
#include "ppe/hydro/solver.hpp"
#include "test_util.hpp"

using namespace ppe;
using namespace ppe::hydro;
using ppe::testing::max_diff;
constexpr double pi = std::numbers::pi;

TEST_CASE("diagnostic vertical velocity") {
  const double a = 0.75;
  SpectralGrid g(16, 16, 32, a);
  Field u1 = Field::from_function(g, [](double, double x2, double) { return std::sin(2 * pi * x2); }, Parity::even);
  Field u2(g, Parity::even);
  CHECK(diagnose_u3(u1, u2).max_abs() <= 1e-12);

  u1 = Field::from_function(g, [&](double x1, double, double z) { return std::sin(2 * pi * x1) * std::cos(pi * z / a); }, Parity::even);
  Field u3 = diagnose_u3(u1, u2);
  CHECK(u3.parity() == Parity::odd);
  Field expect = Field::from_function(g, [&](double x1, double, double z) { return -2 * a * std::cos(2 * pi * x1) * std::sin(pi * z / a); });
  CHECK(max_diff(u3, expect) <= 1e-12);
  // Quadrature oracle: -int_{-a}^{z} 2 pi cos(2 pi x1) cos(pi xi / a) d xi by composite Simpson.
  const int i1 = 3, i3 = 11;
  const double x1 = g.coord(0, i1), z = g.coord(2, i3);
  const int nq = 2000;
  double acc = 0.0;
  for (int j = 0; j <= nq; ++j) {
    const double xi = -a + (z + a) * j / nq;
    const double w = (j == 0 || j == nq) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    acc += w * 2 * pi * std::cos(2 * pi * x1) * std::cos(pi * xi / a);
  }
  acc *= (z + a) / nq / 3.0;
  CHECK(u3(i1, 0, i3) == doctest::Approx(-acc).epsilon(1e-10));
  for (int j1 = 0; j1 < 16; ++j1) CHECK(std::abs(u3(j1, 2, 0)) <= 1e-12);  // z = -a

  aniso::AnisoState r = aniso::init_random_state(g, 9, 1.0, 5);
  Field d3 = derive(diagnose_u3(r.u1, r.u2), 2, 1);
  Field div = derive(r.u1, 0, 1) + derive(r.u2, 1, 1);
  CHECK(max_diff(d3, -1.0 * div) <= 1e-10 * div.max_abs());

  Field bad = Field::from_function(g, [](double x1, double, double) { return std::sin(2 * pi * x1); }, Parity::even);
  CHECK_THROWS_AS(diagnose_u3(bad, u2), ContractError);
}

TEST_CASE("barotropic projection") {
  SpectralGrid g(16, 16, 16, 1.0);
  auto gfun = [](double x1, double x2, double) { return std::cos(2 * pi * x1) * std::sin(4 * pi * x2) + 0.3 * std::sin(2 * pi * x2) + 2.0; };
  Field gs = Field::from_function(g, gfun);
  BarotropicProjection r = project_barotropic(derive(gs, 0, 1), derive(gs, 1, 1));
  CHECK(r.g1.max_abs() <= 1e-12);
  CHECK(r.g2.max_abs() <= 1e-12);
  Field centred = Field::from_function(g, [&](double x1, double x2, double x3) { return gfun(x1, x2, x3) - 2.0; });
  CHECK(max_diff(r.p_s, centred) <= 1e-12);

  Field f1 = Field::from_function(g, [](double x1, double, double z) { return std::sin(2 * pi * x1) * std::cos(pi * z); });
  BarotropicProjection u = project_barotropic(f1, f1);
  CHECK(max_diff(u.g1, f1) <= 1e-14);
  CHECK(u.p_s.max_abs() <= 1e-14);

  // Single horizontal mode against the 2x2 projector I - k k^T / |k|^2.
  const double k1 = 2 * pi * 1, k2 = 2 * pi * 2;
  auto mode = [&](double amp) {
    return Field::from_function(g, [&, amp](double x1, double x2, double) { return amp * std::sin(k1 * x1 + k2 * x2); });
  };
  BarotropicProjection m = project_barotropic(mode(1.0), mode(0.5));
  const double kk = k1 * k1 + k2 * k2, kf = k1 * 1.0 + k2 * 0.5;
  CHECK(max_diff(m.g1, mode(1.0 - k1 * kf / kk)) <= 1e-12);
  CHECK(max_diff(m.g2, mode(0.5 - k2 * kf / kk)) <= 1e-12);
  CHECK(barotropic_residual(m.g1, m.g2) <= 1e-12);
}

TEST_CASE("hydrostatic stepping") {
  SpectralGrid g(16, 16, 16, 1.0);
  model::PhysicalParams p;
  HydroOptions opts;
  HydroState z = make_state(Field(g, Parity::even), Field(g, Parity::even), Field(g, Parity::odd));
  HydroTendency tz = tendency_h(z, p, Field(g, Parity::odd), opts);
  for (const Field* f : {&tz.f1, &tz.f2, &tz.fc}) CHECK(f->max_abs() == 0.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  ctrl.t_end = 0.1;
  HydroState zs = step_hydro(z, p, Field(g, Parity::odd), ctrl, opts);
  CHECK(zs.u1.max_abs() == 0.0);
  CHECK(zs.c.max_abs() == 0.0);

  p.k3 = 0.6;
  HydroState d = z;
  d.c = Field::from_function(g, [](double, double, double zz) { return std::sin(pi * zz); }, Parity::odd);
  HydroState out = integrate_hydro(d, p, Field(g, Parity::odd), ctrl, opts);
  CHECK(max_diff(out.c, std::exp(-p.k3 * pi * pi * 0.1) * d.c) <= 1e-10);

  opts.mu = 0.3;
  d.c = Field::from_function(g, [](double x1, double, double zz) { return std::sin(2 * pi * x1) * std::sin(pi * zz); }, Parity::odd);
  out = integrate_hydro(d, p, Field(g, Parity::odd), ctrl, opts);
  CHECK(max_diff(out.c, std::exp(-(0.3 * 4 * pi * pi + p.k3 * pi * pi) * 0.1) * d.c) <= 1e-10);
  opts.mu = -1.0;
  CHECK_THROWS_AS(opts.validate(), ConfigError);
}

TEST_CASE("hydrostatic invariants on random data") {
  SpectralGrid g(16, 16, 16, 1.0);
  model::PhysicalParams p;
  HydroOptions opts;
  aniso::AnisoState r = aniso::init_random_state(g, 4, 1.0, 4);
  HydroState s = make_state(r.u1, r.u2, r.c);

  // Coriolis: the rotation (gamma u2, -gamma u1) does no work.
  const double gamma = model::rotate_coriolis(p).gamma;
  CHECK(std::abs(inner(gamma * s.u2, s.u1) + inner(-gamma * s.u1, s.u2)) <= 1e-14);

  StepControl ctrl;
  ctrl.dt = 0.005;
  ctrl.t_end = 0.05;
  Field src = Field::from_function(g, [](double x1, double, double z) { return std::cos(2 * pi * x1) * std::sin(pi * z); }, Parity::odd);
  integrate_hydro(s, p, src, ctrl, opts, [&](const HydroState& st) {
    CHECK(barotropic_residual(st.u1, st.u2) <= 1e-10 * (1.0 + l2_norm(st.u1)));
    CHECK(parity_residual(st.u1) <= 1e-10 * l2_norm(st.u1));
    CHECK(parity_residual(st.c) <= 1e-10 * l2_norm(st.c));
    CHECK(parity_residual(st.u3) <= 1e-10 * l2_norm(st.u3));
    for (int i1 = 0; i1 < 16; ++i1) CHECK(std::abs(st.u3(i1, 5, 0)) <= 1e-10);
    Field ps3 = derive(st.p_s, 2, 1);
    CHECK(ps3.max_abs() <= 1e-10);
    return true;
  });
}

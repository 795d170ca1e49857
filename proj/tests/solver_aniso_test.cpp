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
#include "test_util.hpp"

using namespace ppe;
using namespace ppe::aniso;
using ppe::testing::max_diff;
using ppe::testing::rel_diff;
constexpr double pi = std::numbers::pi;

namespace {

AnisoState zero_state(const SpectralGrid& g) {
  return {Field(g, Parity::even), Field(g, Parity::even), Field(g, Parity::odd), Field(g, Parity::odd),
          Field(g, Parity::even), 0.0};
}

model::PhysicalParams params(double eps) {
  model::PhysicalParams p;
  p.eps = eps;
  return p;
}

}  // namespace

TEST_CASE("zero state stays zero") {
  SpectralGrid g(16, 16, 16, 1.0);
  AnisoState z = zero_state(g);
  Field src(g, Parity::odd);
  AnisoTendency t = tendency(z, params(0.3), src);
  for (const Field* f : {&t.f1, &t.f2, &t.f3, &t.fc}) CHECK(f->max_abs() == 0.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  ctrl.t_end = 0.01;
  AnisoState s = step(z, params(0.3), src, ctrl);
  for (const Field* f : {&s.u1, &s.u2, &s.u3, &s.c, &s.p}) CHECK(f->max_abs() == 0.0);
  CHECK(s.t == doctest::Approx(0.01));
}

TEST_CASE("pure diffusion eigenmodes") {
  SpectralGrid g(16, 16, 16, 1.0);
  model::PhysicalParams p = params(0.5);
  p.k2 = 0.7;
  p.k3 = 0.4;
  AnisoState s = zero_state(g);
  s.c = Field::from_function(g, [](double, double x2, double) { return std::sin(2 * pi * x2); });
  AnisoTendency t = tendency(s, p, Field(g, Parity::odd));
  CHECK(max_diff(t.fc, -4 * pi * pi * p.k2 * s.c) <= 1e-10);

  s.c = Field::from_function(g, [](double, double x2, double z) { return std::sin(2 * pi * x2) * std::sin(pi * z); }, Parity::odd);
  StepControl ctrl;
  ctrl.dt = 0.01;
  ctrl.t_end = 0.2;
  const Field c0 = s.c;
  AnisoState out = integrate(s, p, Field(g, Parity::odd), ctrl);
  const double decay = std::exp(-(4 * pi * pi * p.k2 + p.k3 * pi * pi) * 0.2);
  CHECK(max_diff(out.c, decay * c0) <= 1e-10);
  CHECK(out.t == doctest::Approx(0.2));
}

TEST_CASE("weighted projection") {
  SpectralGrid g(16, 16, 16, 0.5);
  std::mt19937_64 rng(21);
  Field gs = ppe::testing::random_field(g, rng, 4);
  for (double eps : {1.0, 0.2}) {
    Field w3 = (1.0 / (eps * eps)) * derive(gs, 2, 1);
    WeightedProjection r = project_weighted(derive(gs, 0, 1), derive(gs, 1, 1), w3, eps);
    CHECK(r.g1.max_abs() <= 1e-10);
    CHECK(r.g2.max_abs() <= 1e-10);
    CHECK(r.g3.max_abs() <= 1e-9);
    Field centred = gs;
    for (double& v : centred.values()) v -= gs.mean();
    CHECK(max_diff(r.p, centred) <= 1e-10);
  }
  Field one = Field::from_function(g, [](double, double, double) { return 1.0; });
  WeightedProjection c = project_weighted(one, 2.0 * one, -1.0 * one, 0.1);
  CHECK(max_diff(c.g1, one) <= 1e-14);
  CHECK(max_diff(c.g2, 2.0 * one) <= 1e-14);
  CHECK(max_diff(c.g3, -1.0 * one) <= 1e-14);
  CHECK(c.p.max_abs() <= 1e-14);

  // Single mode against the 3x3 projector I - kw k^T / (k . kw), kw = (k1, k2, k3/eps^2).
  const double eps = 0.3;
  const double k[3] = {2 * pi * 2, -2 * pi * 1, 2 * pi * 3 / (2 * g.a())};
  const double kw[3] = {k[0], k[1], k[2] / (eps * eps)};
  const double amp[3] = {0.7, -0.2, 1.1};
  auto mode = [&](int comp) {
    return Field::from_function(g, [&, comp](double x1, double x2, double x3) {
      return amp[comp] * std::cos(k[0] * x1 + k[1] * x2 + k[2] * x3);
    });
  };
  WeightedProjection m = project_weighted(mode(0), mode(1), mode(2), eps);
  const double kdotkw = k[0] * kw[0] + k[1] * kw[1] + k[2] * kw[2];
  const double kdota = k[0] * amp[0] + k[1] * amp[1] + k[2] * amp[2];
  const Field* got[3] = {&m.g1, &m.g2, &m.g3};
  for (int i = 0; i < 3; ++i) {
    const double gi = amp[i] - kw[i] * kdota / kdotkw;
    Field expect = Field::from_function(g, [&](double x1, double x2, double x3) {
      return gi * std::cos(k[0] * x1 + k[1] * x2 + k[2] * x3);
    });
    CHECK(max_diff(*got[i], expect) <= 1e-12);
  }
  Field pe = Field::from_function(g, [&](double x1, double x2, double x3) {
    return kdota / kdotkw * std::sin(k[0] * x1 + k[1] * x2 + k[2] * x3);
  });
  CHECK(max_diff(m.p, pe) <= 1e-12);
}

TEST_CASE("random initial state") {
  SpectralGrid g(16, 16, 16, 1.0);
  AnisoState z = init_random_state(g, 3, 0.0, 4);
  for (const Field* f : {&z.u1, &z.u2, &z.u3, &z.c}) CHECK(f->max_abs() == 0.0);
  AnisoState a = init_random_state(g, 42, 1.0, 4);
  AnisoState b = init_random_state(g, 42, 1.0, 4);
  CHECK(max_diff(a.u1, b.u1) == 0.0);
  CHECK(max_diff(a.c, b.c) == 0.0);
  AnisoState other = init_random_state(g, 43, 1.0, 4);
  CHECK(max_diff(a.u1, other.u1) > 0.1);
  CHECK(divergence_norm(a) <= 1e-10 * velocity_gradient_norm(a));
  for (const Field* f : {&a.u1, &a.u2, &a.u3, &a.c}) {
    CHECK(parity_residual(*f) <= 1e-10 * l2_norm(*f));
    CHECK(std::abs(f->mean()) <= 1e-14);
  }
  CHECK(std::sqrt((std::pow(l2_norm(a.u1), 2) + std::pow(l2_norm(a.u2), 2)) / g.volume()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(init_random_state(g, 1, 1.0, 6), ConfigError);
}

TEST_CASE("steps keep the constraint and parities") {
  SpectralGrid g(16, 16, 16, 1.0);
  model::PhysicalParams p = params(0.1);
  AnisoState s = init_random_state(g, 5, 1.0, 4);
  StepControl ctrl;
  ctrl.dt = 0.005;
  ctrl.t_end = 0.05;
  Field src = Field::from_function(g, [](double x1, double, double z) { return std::cos(2 * pi * x1) * std::sin(pi * z); }, Parity::odd);
  integrate(s, p, src, ctrl, [&](const AnisoState& st) {
    CHECK(divergence_norm(st) <= 1e-10 * velocity_gradient_norm(st));
    for (const Field* f : {&st.u1, &st.u2, &st.u3, &st.c}) CHECK(parity_residual(*f) <= 1e-10 * l2_norm(*f));
    CHECK(std::abs(st.p.mean()) <= 1e-12);
    return true;
  });
}

TEST_CASE("coriolis work vanishes pointwise") {
  SpectralGrid g(16, 16, 16, 1.0);
  std::mt19937_64 rng(2);
  AnisoState s = zero_state(g);
  s.u1 = ppe::testing::random_field(g, rng, 5);
  s.u2 = ppe::testing::random_field(g, rng, 5);
  s.u3 = ppe::testing::random_field(g, rng, 5);
  for (double eps : {1.0, 0.1, 0.025}) {
    model::PhysicalParams p = params(eps);
    p.theta = 0.3;
    p.phi = 0.9;
    CoriolisForce c = coriolis(s, p);
    double scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      scale = std::max(scale, std::abs(s.u1.values()[i] * c.c1.values()[i]) + std::abs(s.u2.values()[i] * c.c2.values()[i]) +
                                  eps * eps * std::abs(s.u3.values()[i] * c.c3.values()[i]));
    }
    CHECK(coriolis_work(s, p).max_abs() <= 1e-12 * scale);
  }
}

TEST_CASE("preconditions and errors") {
  SpectralGrid g(16, 16, 16, 1.0);
  AnisoState s = zero_state(g);
  CHECK_THROWS_AS(tendency(s, params(0.0), Field(g, Parity::odd)), ConfigError);
  StepControl ctrl;
  ctrl.dt = 0.02;
  ctrl.t_end = 0.02;
  // cap = 0.5 * eps / (2 f) = 0.0125 for eps = 0.05
  CHECK_THROWS_AS(step(s, params(0.05), Field(g, Parity::odd), ctrl), ConfigError);
  ctrl.eps_dt_coupling = false;
  CHECK_NOTHROW(step(s, params(0.05), Field(g, Parity::odd), ctrl));
  s.c(1, 1, 1) = std::nan("");
  CHECK_THROWS_AS(tendency(s, params(0.5), Field(g, Parity::odd)), BlowUpError);
}

#include "ppe/aniso/solver.hpp"

#include <cmath>
#include <random>

#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"
#include "ppe/hydro/solver.hpp"

namespace ppe::aniso {
namespace {

using cplx = std::complex<double>;

struct Prognostic {
  Spectrum u1, u2, u3, c;
};

struct Explicit {
  Prognostic n;
  Spectrum p;
};

void require_eps(double eps) {
  if (!(eps > 0.0)) throw ConfigError("the anisotropic system needs eps > 0");
}

void enforce_parities(Prognostic& s) {
  parity_project_in_place(s.u1, Parity::even);
  parity_project_in_place(s.u2, Parity::even);
  parity_project_in_place(s.u3, Parity::odd);
  parity_project_in_place(s.c, Parity::odd);
}

void axpy(Spectrum& y, const Spectrum& x, double a) {
  Spectrum t = x;
  t *= a;
  y += t;
}

Explicit explicit_terms(const Prognostic& s, double t, const model::PhysicalParams& p,
                        const Spectrum& source, const Forcing& forcing) {
  const model::Coriolis cor = model::rotate_coriolis(p);
  const double eps = p.eps;
  const Field u1 = fft_inverse(s.u1);
  const Field u2 = fft_inverse(s.u2);
  const Field u3 = fft_inverse(s.u3);
  Explicit out{{advect(u1, u2, u3, s.u1), advect(u1, u2, u3, s.u2), advect(u1, u2, u3, s.u3),
                advect(u1, u2, u3, s.c)},
               Spectrum(s.u1.grid())};
  Prognostic& n = out.n;
  auto n1 = n.u1.coeffs();
  auto n2 = n.u2.coeffs();
  auto n3 = n.u3.coeffs();
  auto nc = n.c.coeffs();
  const auto a1 = s.u1.coeffs();
  const auto a2 = s.u2.coeffs();
  const auto a3 = s.u3.coeffs();
  const auto sh = source.coeffs();
  for (std::size_t i = 0; i < n1.size(); ++i) {
    n1[i] = -n1[i] + cor.gamma * a2[i] - eps * cor.beta * a3[i];
    n2[i] = -n2[i] - cor.gamma * a1[i] + eps * cor.alpha * a3[i];
    n3[i] = -n3[i] + (cor.beta * a1[i] - cor.alpha * a2[i]) / eps;
    nc[i] = -nc[i] + a3[i] / p.a + sh[i];
  }
  if (forcing) {
    const ForcingSample f = forcing(t);
    n.u1 += fft_forward(f.f1);
    n.u2 += fft_forward(f.f2);
    n.u3 += fft_forward(f.f3);
    n.c += fft_forward(f.fc);
  }
  for (Spectrum* x : {&n.u1, &n.u2, &n.u3, &n.c}) dealias_in_place(*x);
  enforce_parities(n);
  project_weighted_in_place(n.u1, n.u2, n.u3, eps, &out.p);
  return out;
}

void check_finite(const Field& f, double t) {
  if (!f.all_finite()) throw BlowUpError("non-finite value in anisotropic state", t);
}

void check_parity(const Field& f) {
  if (parity_residual(f) > 1e-8 * (1.0 + l2_norm(f))) {
    throw ConsistencyError("parity drift after an anisotropic step");
  }
}

Spectrum random_band(const SpectralGrid& g, std::mt19937_64& rng, int bandlimit) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(g.size());
  for (double& v : noise) v = normal(rng);
  Spectrum s = fft_forward(Field(g, std::move(noise), Parity::none));
  auto c = s.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    const int m1 = g.signed_mode(0, i1), m2 = g.signed_mode(1, i2), m3 = i3;
    if (std::abs(m1) > bandlimit || std::abs(m2) > bandlimit || m3 > bandlimit) {
      c[idx] = 0.0;
      return;
    }
    c[idx] /= 1.0 + m1 * m1 + m2 * m2 + m3 * m3;
  });
  return s;
}

}  // namespace

double divergence_norm(const AnisoState& s) {
  Spectrum d = derive(fft_forward(s.u1), 0, 1);
  d += derive(fft_forward(s.u2), 1, 1);
  d += derive(fft_forward(s.u3), 2, 1);
  return norms(d).l2;
}

double velocity_gradient_norm(const AnisoState& s) {
  double acc = 0.0;
  for (const Field* f : {&s.u1, &s.u2, &s.u3}) {
    const NormReport r = norms(*f);
    for (double g : r.grad) acc += g * g;
  }
  return std::sqrt(acc);
}

CoriolisForce coriolis(const AnisoState& s, const model::PhysicalParams& p) {
  require_eps(p.eps);
  const model::Coriolis cor = model::rotate_coriolis(p);
  const double eps = p.eps;
  return {cor.gamma * s.u2 - eps * cor.beta * s.u3, eps * cor.alpha * s.u3 - cor.gamma * s.u1,
          (cor.beta / eps) * s.u1 - (cor.alpha / eps) * s.u2};
}

Field coriolis_work(const AnisoState& s, const model::PhysicalParams& p) {
  const CoriolisForce c = coriolis(s, p);
  Field w = multiply(s.u1, c.c1);
  w += multiply(s.u2, c.c2);
  w += (p.eps * p.eps) * multiply(s.u3, c.c3);
  return w;
}

void project_weighted_in_place(Spectrum& f1, Spectrum& f2, Spectrum& f3, double eps, Spectrum* p) {
  require_eps(eps);
  const auto& g = f1.grid();
  if (p) *p = Spectrum(g, Parity::even);
  auto a1 = f1.coeffs();
  auto a2 = f2.coeffs();
  auto a3 = f3.coeffs();
  const double w = 1.0 / (eps * eps);
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    const double k1 = g.derivative_wavenumber(0, i1);
    const double k2 = g.derivative_wavenumber(1, i2);
    const double k3 = g.derivative_wavenumber(2, i3);
    const double den = k1 * k1 + k2 * k2 + w * k3 * k3;
    if (den == 0.0) return;
    const cplx ph = cplx(0.0, -1.0) * (k1 * a1[idx] + k2 * a2[idx] + k3 * a3[idx]) / den;
    a1[idx] -= cplx(0.0, k1) * ph;
    a2[idx] -= cplx(0.0, k2) * ph;
    a3[idx] -= cplx(0.0, w * k3) * ph;
    if (p) p->coeffs()[idx] = ph;
  });
}

WeightedProjection project_weighted(const Field& f1, const Field& f2, const Field& f3, double eps) {
  Spectrum a = fft_forward(f1), b = fft_forward(f2), c = fft_forward(f3);
  Spectrum p(f1.grid());
  project_weighted_in_place(a, b, c, eps, &p);
  Field pf = fft_inverse(p);
  return {fft_inverse(a), fft_inverse(b), fft_inverse(c), pf.with_parity(Parity::even)};
}

AnisoTendency tendency(const AnisoState& s, const model::PhysicalParams& p, const Field& source) {
  require_eps(p.eps);
  for (const Field* f : {&s.u1, &s.u2, &s.u3, &s.c, &source}) check_finite(*f, s.t);
  const model::Coriolis cor = model::rotate_coriolis(p);
  const double eps = p.eps;
  const Spectrum a1 = fft_forward(s.u1), a2 = fft_forward(s.u2), a3 = fft_forward(s.u3);
  const Spectrum c = fft_forward(s.c);
  const std::array<double, 3> nu{p.nu1, p.nu2, p.nu3};
  const std::array<double, 3> kc{eps * p.k1, p.k2, p.k3};

  Spectrum f1 = diffuse(a1, nu);
  f1 -= advect(s.u1, s.u2, s.u3, a1);
  Spectrum f2 = diffuse(a2, nu);
  f2 -= advect(s.u1, s.u2, s.u3, a2);
  Spectrum f3 = diffuse(a3, nu);
  f3 -= advect(s.u1, s.u2, s.u3, a3);
  Spectrum fc = diffuse(c, kc);
  fc -= advect(s.u1, s.u2, s.u3, c);
  axpy(f1, a2, cor.gamma);
  axpy(f1, a3, -eps * cor.beta);
  axpy(f2, a1, -cor.gamma);
  axpy(f2, a3, eps * cor.alpha);
  axpy(f3, a1, cor.beta / eps);
  axpy(f3, a2, -cor.alpha / eps);
  axpy(fc, a3, 1.0 / p.a);
  fc += fft_forward(source);
  for (Spectrum* x : {&f1, &f2, &f3, &fc}) dealias_in_place(*x);
  return {fft_inverse(f1), fft_inverse(f2), fft_inverse(f3), fft_inverse(fc)};
}

AnisoState step(const AnisoState& s, const model::PhysicalParams& p, const Field& source,
                const StepControl& ctrl, const Forcing& forcing) {
  require_eps(p.eps);
  ctrl.validate(p);
  const double dt = ctrl.dt;
  const std::array<double, 3> nu{p.nu1, p.nu2, p.nu3};
  const std::array<double, 3> kc{p.eps * p.k1, p.k2, p.k3};
  const Spectrum src = fft_forward(source);

  Prognostic s0{fft_forward(s.u1), fft_forward(s.u2), fft_forward(s.u3), fft_forward(s.c)};
  for (Spectrum* x : {&s0.u1, &s0.u2, &s0.u3, &s0.c}) dealias_in_place(*x);
  enforce_parities(s0);
  project_weighted_in_place(s0.u1, s0.u2, s0.u3, p.eps);
  const Explicit e0 = explicit_terms(s0, s.t, p, src, forcing);

  auto heat = [&](Prognostic& x) {
    apply_heat_factor(x.u1, nu, dt);
    apply_heat_factor(x.u2, nu, dt);
    apply_heat_factor(x.u3, nu, dt);
    apply_heat_factor(x.c, kc, dt);
  };
  auto add = [](Prognostic& y, const Prognostic& x, double a) {
    axpy(y.u1, x.u1, a);
    axpy(y.u2, x.u2, a);
    axpy(y.u3, x.u3, a);
    axpy(y.c, x.c, a);
  };

  Prognostic mid = s0;
  add(mid, e0.n, dt);
  heat(mid);
  const Explicit e1 = explicit_terms(mid, s.t + dt, p, src, forcing);

  // u_{n+1} = E u_n + dt/2 (E N_0 + N_1)
  Prognostic next = s0;
  add(next, e0.n, 0.5 * dt);
  heat(next);
  add(next, e1.n, 0.5 * dt);
  enforce_parities(next);
  project_weighted_in_place(next.u1, next.u2, next.u3, p.eps);

  Spectrum pr = e0.p;
  apply_heat_factor(pr, nu, dt);
  pr += e1.p;
  pr *= 0.5;

  const double t1 = s.t + dt;
  AnisoState out{fft_inverse(next.u1), fft_inverse(next.u2), fft_inverse(next.u3),
                 fft_inverse(next.c), fft_inverse(pr).with_parity(Parity::even), t1};
  for (const Field* f : {&out.u1, &out.u2, &out.u3, &out.c}) {
    check_finite(*f, t1);
    check_parity(*f);
  }
  return out;
}

AnisoState init_random_state(const SpectralGrid& grid, std::uint64_t seed, double amplitude,
                             int bandlimit) {
  for (int axis = 0; axis < 3; ++axis) {
    if (bandlimit < 1 || bandlimit > grid.dealias_cutoff(axis)) {
      throw ConfigError("bandlimit must lie in [1, n/3) on every axis");
    }
  }
  std::mt19937_64 rng(seed);
  Spectrum u1 = random_band(grid, rng, bandlimit);
  Spectrum u2 = random_band(grid, rng, bandlimit);
  Spectrum c = random_band(grid, rng, bandlimit);
  parity_project_in_place(u1, Parity::even);
  parity_project_in_place(u2, Parity::even);
  parity_project_in_place(c, Parity::odd);
  u1(0, 0, 0) = 0.0;
  u2(0, 0, 0) = 0.0;
  hydro::project_barotropic_in_place(u1, u2);
  Spectrum u3 = hydro::diagnose_u3(u1, u2);

  const double vol = grid.volume();
  const double urms = std::sqrt((std::pow(norms(u1).l2, 2) + std::pow(norms(u2).l2, 2)) / vol);
  const double crms = norms(c).l2 / std::sqrt(vol);
  const double su = urms > 0.0 ? amplitude / urms : 0.0;
  const double sc = crms > 0.0 ? amplitude / crms : 0.0;
  u1 *= su;
  u2 *= su;
  u3 *= su;
  c *= sc;
  return AnisoState{fft_inverse(u1), fft_inverse(u2), fft_inverse(u3), fft_inverse(c),
                    Field(grid, Parity::even), 0.0};
}

AnisoState integrate(AnisoState s, const model::PhysicalParams& p, const Field& source,
                     const StepControl& ctrl, const StepObserver& observe, const Forcing& forcing) {
  ctrl.validate(p);
  const long n = ctrl.steps();
  const double t0 = s.t;
  if (observe && !observe(s)) return s;
  for (long i = 1; i <= n; ++i) {
    s = step(s, p, source, ctrl, forcing);
    s.t = t0 + static_cast<double>(i) * ctrl.dt;
    if (observe && !observe(s)) break;
  }
  return s;
}

}  // namespace ppe::aniso

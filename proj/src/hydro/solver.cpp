#include "ppe/hydro/solver.hpp"

#include <cmath>

#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::hydro {
namespace {

using cplx = std::complex<double>;

Spectrum horizontal_divergence(const Spectrum& u1, const Spectrum& u2) {
  const auto& g = u1.grid();
  Spectrum d(g, Parity::none);
  auto o = d.coeffs();
  auto a = u1.coeffs();
  auto b = u2.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int, double, double, double) {
    const double k1 = g.derivative_wavenumber(0, i1);
    const double k2 = g.derivative_wavenumber(1, i2);
    o[idx] = cplx(0.0, k1) * a[idx] + cplx(0.0, k2) * b[idx];
  });
  return d;
}

double barotropic_residual(const Spectrum& div) {
  const auto& g = div.grid();
  double acc = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2) acc += std::norm(div(i1, i2, 0));
  return std::sqrt(acc);
}

double horizontal_gradient_norm(const Spectrum& u1, const Spectrum& u2) {
  double acc = 0.0;
  for (const Spectrum* u : {&u1, &u2}) {
    const NormReport r = norms(*u);
    for (double gi : r.grad) acc += gi * gi;
  }
  return std::sqrt(acc);
}

struct Prognostic {
  Spectrum u1, u2, c;
};

struct Explicit {
  Prognostic n;
  Spectrum p_s;
};

Explicit explicit_terms(const Prognostic& s, double t, const model::PhysicalParams& p,
                        const Spectrum& source, const Forcing& forcing) {
  const double gamma = model::rotate_coriolis(p).gamma;
  const Field u1 = fft_inverse(s.u1);
  const Field u2 = fft_inverse(s.u2);
  const Field u3 = fft_inverse(diagnose_u3(s.u1, s.u2));

  Explicit out{{advect(u1, u2, u3, s.u1), advect(u1, u2, u3, s.u2), advect(u1, u2, u3, s.c)},
               Spectrum(s.u1.grid())};
  Prognostic& n = out.n;
  n.u1 *= -1.0;
  n.u2 *= -1.0;
  n.c *= -1.0;
  auto n1 = n.u1.coeffs();
  auto n2 = n.u2.coeffs();
  auto nc = n.c.coeffs();
  const auto a1 = s.u1.coeffs();
  const auto a2 = s.u2.coeffs();
  const Spectrum u3h = fft_forward(u3);
  const auto a3 = u3h.coeffs();
  const auto sh = source.coeffs();
  for (std::size_t i = 0; i < n1.size(); ++i) {
    n1[i] += gamma * a2[i];
    n2[i] -= gamma * a1[i];
    nc[i] += a3[i] / p.a + sh[i];
  }
  if (forcing) {
    const ForcingSample f = forcing(t);
    n.u1 += fft_forward(f.f1);
    n.u2 += fft_forward(f.f2);
    n.c += fft_forward(f.fc);
  }
  for (Spectrum* x : {&n.u1, &n.u2, &n.c}) dealias_in_place(*x);
  parity_project_in_place(n.u1, Parity::even);
  parity_project_in_place(n.u2, Parity::even);
  parity_project_in_place(n.c, Parity::odd);
  project_barotropic_in_place(n.u1, n.u2, &out.p_s);
  return out;
}

void check_finite(const Field& f, double t) {
  if (!f.all_finite()) throw BlowUpError("non-finite value in hydrostatic state", t);
}

void check_parity(const Field& f) {
  if (parity_residual(f) > 1e-8 * (1.0 + l2_norm(f))) {
    throw ConsistencyError("parity drift after a hydrostatic step");
  }
}

}  // namespace

void HydroOptions::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be >= 0");
}

HydroState make_state(Field u1, Field u2, Field c, double t) {
  Field u3 = diagnose_u3(u1, u2);
  const SpectralGrid& g = u1.grid();
  return HydroState{std::move(u1), std::move(u2), std::move(c), Field(g, Parity::even), t,
                    std::move(u3)};
}

double barotropic_residual(const Field& u1, const Field& u2) {
  return barotropic_residual(horizontal_divergence(fft_forward(u1), fft_forward(u2)));
}

Spectrum diagnose_u3(const Spectrum& u1, const Spectrum& u2) {
  const auto& g = u1.grid();
  if (!(u2.grid() == g)) throw ConfigError("diagnose_u3: grid mismatch");
  const Spectrum div = horizontal_divergence(u1, u2);
  const double residual = barotropic_residual(div);
  if (residual > 1e-10 * horizontal_gradient_norm(u1, u2)) {
    throw ContractError("diagnose_u3: vertical mean of div_h u_h does not vanish (" +
                        std::to_string(residual) + ")");
  }
  const bool odd = u1.parity() == Parity::even && u2.parity() == Parity::even;
  Spectrum u3(g, odd ? Parity::odd : Parity::none);
  auto o = u3.coeffs();
  const auto d = div.coeffs();
  for_each_mode(g, [&](std::size_t idx, int, int, int i3, double, double, double) {
    const double k3 = g.derivative_wavenumber(2, i3);
    if (i3 > 0 && k3 != 0.0) o[idx] = cplx(0.0, 1.0) * d[idx] / k3;
  });
  // Fix the k3 = 0 mode so that u3(-a) = 0; it vanishes for even inputs.
  // Mode k3 is e^{i k3 (z + a)}, so every mode equals its coefficient at z = -a.
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const int j1 = (g.n1() - i1) % g.n1();
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const int j2 = (g.n2() - i2) % g.n2();
      cplx sum = 0.0;
      for (int i3 = 1; i3 < g.n3_half(); ++i3) {
        sum += u3(i1, i2, i3) + std::conj(u3(j1, j2, i3));
      }
      u3(i1, i2, 0) = -sum;
    }
  }
  return u3;
}

Field diagnose_u3(const Field& u1, const Field& u2) {
  return fft_inverse(diagnose_u3(fft_forward(u1), fft_forward(u2)));
}

void project_barotropic_in_place(Spectrum& f1, Spectrum& f2, Spectrum* p_s) {
  const auto& g = f1.grid();
  if (p_s) *p_s = Spectrum(g, Parity::even);
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const double k1 = g.derivative_wavenumber(0, i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double k2 = g.derivative_wavenumber(1, i2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const cplx p = cplx(0.0, -1.0) * (k1 * f1(i1, i2, 0) + k2 * f2(i1, i2, 0)) / kk;
      f1(i1, i2, 0) -= cplx(0.0, k1) * p;
      f2(i1, i2, 0) -= cplx(0.0, k2) * p;
      if (p_s) (*p_s)(i1, i2, 0) = p;
    }
  }
}

BarotropicProjection project_barotropic(const Field& f1, const Field& f2) {
  Spectrum a = fft_forward(f1);
  Spectrum b = fft_forward(f2);
  Spectrum p(f1.grid());
  project_barotropic_in_place(a, b, &p);
  Field ps = fft_inverse(p);
  return {fft_inverse(a), fft_inverse(b), ps.with_parity(Parity::even)};
}

HydroTendency tendency_h(const HydroState& s, const model::PhysicalParams& p, const Field& source,
                         const HydroOptions& opts) {
  opts.validate();
  for (const Field* f : {&s.u1, &s.u2, &s.c, &source}) check_finite(*f, s.t);
  const double gamma = model::rotate_coriolis(p).gamma;
  const Spectrum a1 = fft_forward(s.u1);
  const Spectrum a2 = fft_forward(s.u2);
  const Spectrum c = fft_forward(s.c);
  const Field u3 = fft_inverse(diagnose_u3(a1, a2));
  const std::array<double, 3> nu{p.nu1, p.nu2, p.nu3};
  const std::array<double, 3> kc{opts.mu, p.k2, p.k3};

  Spectrum f1 = diffuse(a1, nu);
  f1 -= advect(s.u1, s.u2, u3, a1);
  Spectrum f2 = diffuse(a2, nu);
  f2 -= advect(s.u1, s.u2, u3, a2);
  Spectrum fc = diffuse(c, kc);
  fc -= advect(s.u1, s.u2, u3, c);
  Spectrum extra = fft_forward(u3);
  extra *= 1.0 / p.a;
  extra += fft_forward(source);
  fc += extra;
  Spectrum r1 = a2, r2 = a1;
  r1 *= gamma;
  r2 *= -gamma;
  f1 += r1;
  f2 += r2;
  for (Spectrum* x : {&f1, &f2, &fc}) dealias_in_place(*x);
  return {fft_inverse(f1).with_parity(s.u1.parity()), fft_inverse(f2).with_parity(s.u2.parity()),
          fft_inverse(fc).with_parity(s.c.parity())};
}

HydroState step_hydro(const HydroState& s, const model::PhysicalParams& p, const Field& source,
                      const StepControl& ctrl, const HydroOptions& opts, const Forcing& forcing) {
  opts.validate();
  const double dt = ctrl.dt;
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const std::array<double, 3> nu{p.nu1, p.nu2, p.nu3};
  const std::array<double, 3> kc{opts.mu, p.k2, p.k3};
  const Spectrum src = fft_forward(source);

  Prognostic s0{fft_forward(s.u1), fft_forward(s.u2), fft_forward(s.c)};
  for (Spectrum* x : {&s0.u1, &s0.u2, &s0.c}) dealias_in_place(*x);
  parity_project_in_place(s0.u1, Parity::even);
  parity_project_in_place(s0.u2, Parity::even);
  parity_project_in_place(s0.c, Parity::odd);
  Explicit e0 = explicit_terms(s0, s.t, p, src, forcing);

  Prognostic mid = s0;
  auto axpy = [](Spectrum& y, const Spectrum& x, double a) {
    Spectrum t = x;
    t *= a;
    y += t;
  };
  axpy(mid.u1, e0.n.u1, dt);
  axpy(mid.u2, e0.n.u2, dt);
  axpy(mid.c, e0.n.c, dt);
  apply_heat_factor(mid.u1, nu, dt);
  apply_heat_factor(mid.u2, nu, dt);
  apply_heat_factor(mid.c, kc, dt);
  Explicit e1 = explicit_terms(mid, s.t + dt, p, src, forcing);

  // u_{n+1} = E u_n + dt/2 (E N_0 + N_1)
  Prognostic next = s0;
  axpy(next.u1, e0.n.u1, 0.5 * dt);
  axpy(next.u2, e0.n.u2, 0.5 * dt);
  axpy(next.c, e0.n.c, 0.5 * dt);
  apply_heat_factor(next.u1, nu, dt);
  apply_heat_factor(next.u2, nu, dt);
  apply_heat_factor(next.c, kc, dt);
  axpy(next.u1, e1.n.u1, 0.5 * dt);
  axpy(next.u2, e1.n.u2, 0.5 * dt);
  axpy(next.c, e1.n.c, 0.5 * dt);
  parity_project_in_place(next.u1, Parity::even);
  parity_project_in_place(next.u2, Parity::even);
  parity_project_in_place(next.c, Parity::odd);

  Spectrum ps = e0.p_s;
  apply_heat_factor(ps, nu, dt);
  ps += e1.p_s;
  ps *= 0.5;

  const double t1 = s.t + dt;
  HydroState out{fft_inverse(next.u1), fft_inverse(next.u2), fft_inverse(next.c),
                 fft_inverse(ps).with_parity(Parity::even), t1, Field(s.u1.grid(), Parity::odd)};
  for (const Field* f : {&out.u1, &out.u2, &out.c}) check_finite(*f, t1);
  for (const Field* f : {&out.u1, &out.u2, &out.c}) check_parity(*f);
  out.u3 = fft_inverse(diagnose_u3(next.u1, next.u2));
  return out;
}

HydroState integrate_hydro(HydroState s, const model::PhysicalParams& p, const Field& source,
                           const StepControl& ctrl, const HydroOptions& opts,
                           const HydroObserver& observe, const Forcing& forcing) {
  const long n = ctrl.steps();
  const double t0 = s.t;
  if (observe && !observe(s)) return s;
  for (long i = 1; i <= n; ++i) {
    s = step_hydro(s, p, source, ctrl, opts, forcing);
    s.t = t0 + static_cast<double>(i) * ctrl.dt;
    if (observe && !observe(s)) break;
  }
  return s;
}

}  // namespace ppe::hydro

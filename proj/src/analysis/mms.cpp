#include "ppe/analysis/mms.hpp"

#include <cmath>
#include <numbers>

#include "ppe/core/errors.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::analysis::mms {

Jet3 operator+(const Jet3& a, const Jet3& b) {
  Jet3 r;
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

Jet3 operator*(double s, const Jet3& a) {
  Jet3 r;
  for (int i = 0; i < 4; ++i) r.d[i] = s * a.d[i];
  return r;
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
  const auto& x = a.d;
  const auto& y = b.d;
  return {{x[0] * y[0], x[1] * y[0] + x[0] * y[1], x[2] * y[0] + 2 * x[1] * y[1] + x[0] * y[2],
           x[3] * y[0] + 3 * x[2] * y[1] + 3 * x[1] * y[2] + x[0] * y[3]}};
}

Jet3 exp(const Jet3& a) {
  const auto& f = a.d;
  const double e = std::exp(f[0]);
  return {{e, e * f[1], e * (f[2] + f[1] * f[1]),
           e * (f[3] + 3 * f[1] * f[2] + f[1] * f[1] * f[1])}};
}

Jet3 sin(const Jet3& a) {
  const auto& f = a.d;
  const double s = std::sin(f[0]), c = std::cos(f[0]);
  return {{s, c * f[1], c * f[2] - s * f[1] * f[1],
           c * f[3] - 3 * s * f[1] * f[2] - c * f[1] * f[1] * f[1]}};
}

Jet3 cos(const Jet3& a) {
  const auto& f = a.d;
  const double s = std::sin(f[0]), c = std::cos(f[0]);
  return {{c, -s * f[1], -s * f[2] - c * f[1] * f[1],
           -s * f[3] - 3 * c * f[1] * f[2] + s * f[1] * f[1] * f[1]}};
}

double TimeFactor::value(double t) const { return mean + amp * std::sin(omega * t + phase); }
double TimeFactor::derivative(double t) const { return amp * omega * std::cos(omega * t + phase); }

Field Manufactured::eval(const SpectralGrid& g, double t, std::array<int, 3> orders,
                         bool time_derivative) const {
  for (int o : orders) {
    if (o < 0 || o > 3) throw ContractError("manufactured derivatives are limited to order 3");
  }
  Field out(g);
  for (const auto& term : terms) {
    const double amp = term.coeff * (time_derivative ? term.time.derivative(t) : term.time.value(t));
    if (amp == 0.0) continue;
    std::array<std::vector<double>, 3> line;
    for (int axis = 0; axis < 3; ++axis) {
      line[axis].resize(static_cast<std::size_t>(g.n(axis)));
      for (int i = 0; i < g.n(axis); ++i) {
        line[axis][i] = term.factor[axis](Jet3::variable(g.coord(axis, i))).d[orders[axis]];
      }
    }
    for (int i1 = 0; i1 < g.n1(); ++i1)
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        const double w = amp * line[0][i1] * line[1][i2];
        for (int i3 = 0; i3 < g.n3(); ++i3) out(i1, i2, i3) += w * line[2][i3];
      }
  }
  return out;
}

Problem default_problem(double a, double sharpness, double velocity_scale) {
  constexpr double tau = 2.0 * std::numbers::pi;
  const double kz = std::numbers::pi / a;
  const double b = sharpness;
  auto px = [b](double shift, double w) {
    return Profile([=](const Jet3& x) { return exp((0.8 * b) * sin(tau * w * x + Jet3::constant(shift))); });
  };
  auto even_z = [=](double w) {
    return Profile([=](const Jet3& z) { return exp((0.6 * b) * cos(kz * w * z)); });
  };
  auto odd_z = [=](double w) {
    return Profile([=](const Jet3& z) { return sin(kz * w * z) * exp((0.5 * b) * cos(kz * z)); });
  };
  const double v = velocity_scale;
  Problem pb;
  pb.psi[0].terms.push_back({0.7 * v, {1.0, 0.3, 2.1, 0.2}, {px(0.4, 1), px(1.1, 1), odd_z(1)}});
  pb.psi[1].terms.push_back({-0.5 * v, {1.0, 0.4, 1.7, 0.9}, {px(2.0, 1), px(0.3, 1), odd_z(1)}});
  pb.psi[1].terms.push_back({0.2 * v, {1.0, -0.3, 2.5, 0.0}, {px(0.9, 2), px(2.2, 1), odd_z(2)}});
  pb.psi[2].terms.push_back({0.6 * v, {1.0, 0.5, 1.3, 0.4}, {px(1.5, 1), px(0.7, 1), even_z(1)}});
  pb.c.terms.push_back({1.0, {1.0, 0.5, 2.3, 0.1}, {px(0.2, 1), px(1.9, 1), odd_z(1)}});
  pb.c.terms.push_back({0.4, {1.0, -0.6, 1.1, 0.5}, {px(2.4, 1), px(0.8, 2), odd_z(2)}});
  return pb;
}

Field velocity(const Problem& pb, const SpectralGrid& g, int i, double t, std::array<int, 3> o,
               bool time_derivative) {
  // curl: u_i = d_j psi_k - d_k psi_j for cyclic (i, j, k)
  const int j = (i + 1) % 3, k = (i + 2) % 3;
  std::array<int, 3> oj = o, ok = o;
  oj[j] += 1;
  ok[k] += 1;
  Field u = pb.psi[k].eval(g, t, oj, time_derivative) - pb.psi[j].eval(g, t, ok, time_derivative);
  return u.with_parity(i == 2 ? Parity::odd : Parity::even);
}

aniso::AnisoState exact_aniso(const Problem& pb, const SpectralGrid& g, double t) {
  return {velocity(pb, g, 0, t), velocity(pb, g, 1, t), velocity(pb, g, 2, t),
          pb.c.eval(g, t).with_parity(Parity::odd), Field(g, Parity::even), t};
}

hydro::HydroState exact_hydro(const Problem& pb, const SpectralGrid& g, double t) {
  return {velocity(pb, g, 0, t), velocity(pb, g, 1, t), pb.c.eval(g, t).with_parity(Parity::odd),
          Field(g, Parity::even), t, velocity(pb, g, 2, t)};
}

namespace {

struct Kinematics {
  std::array<Field, 3> u;
  std::array<Field, 3> c_grad;
};

Field advection(const std::array<Field, 3>& u, const std::array<Field, 3>& grad) {
  Field r = multiply(u[0], grad[0]);
  r += multiply(u[1], grad[1]);
  r += multiply(u[2], grad[2]);
  return r;
}

std::array<int, 3> unit(int axis, int order) {
  std::array<int, 3> o{0, 0, 0};
  o[axis] = order;
  return o;
}

/// d_t q + u . grad q - sum_j w_j d_jj q for a velocity component (i >= 0) or c (i < 0).
Field material_minus_diffusion(const Problem& pb, const SpectralGrid& g, double t, int i,
                               const std::array<Field, 3>& u, const std::array<double, 3>& w) {
  auto part = [&](std::array<int, 3> o, bool dt) {
    return i >= 0 ? velocity(pb, g, i, t, o, dt) : pb.c.eval(g, t, o, dt);
  };
  Field r = part({0, 0, 0}, true);
  const std::array<Field, 3> grad{part(unit(0, 1), false), part(unit(1, 1), false), part(unit(2, 1), false)};
  r += advection(u, grad);
  for (int axis = 0; axis < 3; ++axis) r -= w[axis] * part(unit(axis, 2), false);
  return r.with_parity(Parity::none);
}

}  // namespace

Forcing aniso_forcing(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p) {
  return [pb, g, p](double t) {
    const model::Coriolis cor = model::rotate_coriolis(p);
    const std::array<Field, 3> u{velocity(pb, g, 0, t), velocity(pb, g, 1, t), velocity(pb, g, 2, t)};
    const std::array<double, 3> nu{p.nu1, p.nu2, p.nu3};
    const double e = p.eps;
    ForcingSample f{material_minus_diffusion(pb, g, t, 0, u, nu),
                    material_minus_diffusion(pb, g, t, 1, u, nu),
                    material_minus_diffusion(pb, g, t, 2, u, nu),
                    material_minus_diffusion(pb, g, t, -1, u, {e * p.k1, p.k2, p.k3})};
    f.f1 -= cor.gamma * u[1] - e * cor.beta * u[2];
    f.f2 -= e * cor.alpha * u[2] - cor.gamma * u[0];
    f.f3 -= (cor.beta / e) * u[0] - (cor.alpha / e) * u[1];
    f.fc -= (1.0 / p.a) * u[2];
    return f;
  };
}

Forcing hydro_forcing(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p,
                      const hydro::HydroOptions& opts) {
  return [pb, g, p, opts](double t) {
    const double gamma = model::rotate_coriolis(p).gamma;
    const std::array<Field, 3> u{velocity(pb, g, 0, t), velocity(pb, g, 1, t), velocity(pb, g, 2, t)};
    const std::array<double, 3> nu{p.nu1, p.nu2, p.nu3};
    ForcingSample f{material_minus_diffusion(pb, g, t, 0, u, nu),
                    material_minus_diffusion(pb, g, t, 1, u, nu), Field(g),
                    material_minus_diffusion(pb, g, t, -1, u, {opts.mu, p.k2, p.k3})};
    f.f1 -= gamma * u[1];
    f.f2 += gamma * u[0];
    f.fc -= (1.0 / p.a) * u[2];
    return f;
  };
}

namespace {

double rel_error(const Field& x, const Field& ref) {
  const double n = l2_norm(ref);
  return n > 0.0 ? l2_norm(x - ref) / n : l2_norm(x);
}

}  // namespace

double aniso_error(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p,
                   const StepControl& ctrl) {
  const aniso::AnisoState s0 = exact_aniso(pb, g, 0.0);
  const aniso::AnisoState s = aniso::integrate(s0, p, Field(g, Parity::odd), ctrl, {}, aniso_forcing(pb, g, p));
  const aniso::AnisoState e = exact_aniso(pb, g, s.t);
  return std::max({rel_error(s.u1, e.u1), rel_error(s.u2, e.u2), rel_error(s.u3, e.u3), rel_error(s.c, e.c)});
}

double hydro_error(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p,
                   const StepControl& ctrl, const hydro::HydroOptions& opts) {
  const hydro::HydroState e0 = exact_hydro(pb, g, 0.0);
  // the sampled data only satisfies the constraint up to truncation
  const hydro::BarotropicProjection bp = hydro::project_barotropic(e0.u1, e0.u2);
  const hydro::HydroState s0 = hydro::make_state(bp.g1, bp.g2, e0.c, 0.0);
  const hydro::HydroState s = hydro::integrate_hydro(s0, p, Field(g, Parity::odd), ctrl, opts, {},
                                                     hydro_forcing(pb, g, p, opts));
  const hydro::HydroState e = exact_hydro(pb, g, s.t);
  return std::max({rel_error(s.u1, e.u1), rel_error(s.u2, e.u2), rel_error(s.u3, e.u3), rel_error(s.c, e.c)});
}

}  // namespace ppe::analysis::mms

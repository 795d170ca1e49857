#include "ppe/core/calculus.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"

namespace ppe {

Spectrum derive(const Spectrum& s, int axis, int order) {
  if (axis < 0 || axis > 2) throw ContractError("derivative axis must be 0, 1 or 2");
  if (order != 1 && order != 2) throw ContractError("derivative order must be 1 or 2");
  const auto& g = s.grid();
  Parity parity = s.parity();
  if (axis == 2 && order == 1) parity = flip(parity);
  Spectrum out(g, parity);
  auto in = s.coeffs();
  auto o = out.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double k1, double k2, double k3) {
    const int ia[3] = {i1, i2, i3};
    const double k[3] = {k1, k2, k3};
    if (order == 1) {
      const double kd = g.is_nyquist(axis, ia[axis]) ? 0.0 : k[axis];
      o[idx] = std::complex<double>(0.0, kd) * in[idx];
    } else {
      o[idx] = -k[axis] * k[axis] * in[idx];
    }
  });
  return out;
}

Field derive(const Field& f, int axis, int order) {
  return fft_inverse(derive(fft_forward(f), axis, order));
}

bool is_resolved(const SpectralGrid& grid, int i1, int i2, int i3) {
  return std::abs(grid.signed_mode(0, i1)) <= grid.dealias_cutoff(0) &&
         std::abs(grid.signed_mode(1, i2)) <= grid.dealias_cutoff(1) &&
         i3 <= grid.dealias_cutoff(2);
}

void dealias_in_place(Spectrum& s) {
  const auto& g = s.grid();
  auto c = s.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    if (!is_resolved(g, i1, i2, i3)) c[idx] = 0.0;
  });
}

Spectrum dealias(const Spectrum& s) {
  Spectrum out = s;
  dealias_in_place(out);
  return out;
}

Spectrum band_limit(const Spectrum& s, int limit) {
  Spectrum out = s;
  const auto& g = s.grid();
  auto c = out.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    if (std::abs(g.signed_mode(0, i1)) > limit || std::abs(g.signed_mode(1, i2)) > limit ||
        i3 > limit) {
      c[idx] = 0.0;
    }
  });
  return out;
}

Field reflect_z(const Field& f) {
  const auto& g = f.grid();
  Field out(g, f.parity());
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i3 = 0; i3 < g.n3(); ++i3) out(i1, i2, i3) = f(i1, i2, g.reflect_z(i3));
  return out;
}

double parity_residual(const Field& f) {
  if (f.parity() == Parity::none) {
    throw ContractError("parity_residual requires a declared parity");
  }
  const double sign = f.parity() == Parity::even ? 1.0 : -1.0;
  const auto& g = f.grid();
  double acc = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double d = f(i1, i2, i3) - sign * f(i1, i2, g.reflect_z(i3));
        acc += d * d;
      }
  return std::sqrt(acc * g.cell_volume());
}

Field parity_project(const Field& f, Parity p) {
  if (p == Parity::none) return f.with_parity(Parity::none);
  const double sign = p == Parity::even ? 1.0 : -1.0;
  const auto& g = f.grid();
  Field out(g, p);
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i3 = 0; i3 < g.n3(); ++i3)
        out(i1, i2, i3) = 0.5 * (f(i1, i2, i3) + sign * f(i1, i2, g.reflect_z(i3)));
  return out;
}

void parity_project_in_place(Spectrum& s, Parity p) {
  s.set_parity(p);
  if (p == Parity::none) return;
  const double sign = p == Parity::even ? 1.0 : -1.0;
  const auto& g = s.grid();
  const Spectrum src = s;
  auto out = s.coeffs();
  // The reflected field has coefficient conj(c(-m1, -m2, m3)) at (m1, m2, m3).
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    const int j1 = (g.n1() - i1) % g.n1();
    const int j2 = (g.n2() - i2) % g.n2();
    out[idx] = 0.5 * (src(i1, i2, i3) + sign * std::conj(src(j1, j2, i3)));
  });
}

Spectrum advect(const Field& u1, const Field& u2, const Field& u3, const Spectrum& q) {
  const Field* u[3] = {&u1, &u2, &u3};
  const auto& g = q.grid();
  std::vector<double> acc(g.size(), 0.0);
  for (int axis = 0; axis < 3; ++axis) {
    if (!(u[axis]->grid() == g)) throw ConfigError("advect: grid mismatch");
    const Field dq = fft_inverse(derive(q, axis, 1));
    const auto uv = u[axis]->values();
    const auto dv = dq.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += uv[i] * dv[i];
  }
  Spectrum out = fft_forward(Field(g, std::move(acc), Parity::none));
  dealias_in_place(out);
  return out;
}

Spectrum diffuse(const Spectrum& s, const std::array<double, 3>& coeff) {
  Spectrum out = s;
  auto o = out.coeffs();
  for_each_mode(s.grid(), [&](std::size_t idx, int, int, int, double k1, double k2, double k3) {
    o[idx] *= -(coeff[0] * k1 * k1 + coeff[1] * k2 * k2 + coeff[2] * k3 * k3);
  });
  return out;
}

void apply_heat_factor(Spectrum& s, const std::array<double, 3>& coeff, double dt) {
  auto o = s.coeffs();
  for_each_mode(s.grid(), [&](std::size_t idx, int, int, int, double k1, double k2, double k3) {
    o[idx] *= std::exp(-dt * (coeff[0] * k1 * k1 + coeff[1] * k2 * k2 + coeff[2] * k3 * k3));
  });
}

}  // namespace ppe

#include "ppe/core/norms.hpp"

#include <cmath>

#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"

namespace ppe {

NormReport norms(const Spectrum& s) {
  const auto& g = s.grid();
  const auto c = s.coeffs();
  double l2 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double d[3] = {0.0, 0.0, 0.0};
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    const double w = g.parseval_weight(i3) * std::norm(c[idx]);
    // Nyquist content is treated as unresolved so that h1^2 = l2^2 + sum ||d_i f||^2.
    const double kd1 = g.derivative_wavenumber(0, i1);
    const double kd2 = g.derivative_wavenumber(1, i2);
    const double kd3 = g.derivative_wavenumber(2, i3);
    const double kk = kd1 * kd1 + kd2 * kd2 + kd3 * kd3;
    l2 += w;
    s1 += w * kk;
    s2 += w * kk * kk;
    s3 += w * kk * kk * kk;
    d[0] += w * kd1 * kd1;
    d[1] += w * kd2 * kd2;
    d[2] += w * kd3 * kd3;
  });
  const double vol = g.volume();
  NormReport r;
  r.l2 = std::sqrt(vol * l2);
  r.h1 = std::sqrt(vol * (l2 + s1));
  r.h2 = std::sqrt(vol * (l2 + s1 + s2));
  r.h3 = std::sqrt(vol * (l2 + s1 + s2 + s3));
  for (int i = 0; i < 3; ++i) r.grad[i] = std::sqrt(vol * d[i]);
  return r;
}

NormReport norms(const Field& f) {
  NormReport r = norms(fft_forward(f));
  r.linf = f.max_abs();
  return r;
}

double inner(const Spectrum& lhs, const Spectrum& rhs) {
  if (!(lhs.grid() == rhs.grid())) throw ConfigError("field grids do not match");
  const auto& g = lhs.grid();
  const auto a = lhs.coeffs();
  const auto b = rhs.coeffs();
  double acc = 0.0;
  for_each_mode(g, [&](std::size_t idx, int, int, int i3, double, double, double) {
    acc += g.parseval_weight(i3) * (a[idx].real() * b[idx].real() + a[idx].imag() * b[idx].imag());
  });
  return acc * g.volume();
}

double inner(const Field& lhs, const Field& rhs) {
  if (!(lhs.grid() == rhs.grid())) throw ConfigError("field grids do not match");
  const auto a = lhs.values();
  const auto b = rhs.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * lhs.grid().cell_volume();
}

double l2_norm(const Field& f) { return std::sqrt(inner(f, f)); }

}  // namespace ppe

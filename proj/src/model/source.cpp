#include "ppe/model/source.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"

namespace ppe::model {
namespace {

double bump(double r2) {
  const double d = r2 - 1.0;
  return d < 0.0 ? std::exp(1.0 / d) : 0.0;
}

double radial_integral(double kappa) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto integrand = [kappa](double r) {
    const double kr = kappa * r;
    const double sinc = std::abs(kr) < 1e-8 ? 1.0 - kr * kr / 6.0 : std::sin(kr) / kr;
    return r * r * bump(r * r) * sinc;
  };
  return 4.0 * std::numbers::pi * Quad::integrate(integrand, 0.0, 1.0, 15, 1e-14);
}

double periodic_offset(double x, double c, double period) {
  double d = x - c;
  return d - period * std::round(d / period);
}

void check_center(const SpectralGrid& grid, const Point3& c) {
  const bool inside = c[0] >= 0.0 && c[0] <= 1.0 && c[1] >= 0.0 && c[1] <= 1.0 &&
                      c[2] > -grid.a() && c[2] < grid.a();
  if (!inside) throw ConfigError("source center must lie inside the box");
}

Spectrum translated(const Spectrum& s, const Point3& c) {
  Spectrum out = s;
  const auto& g = s.grid();
  auto o = out.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double k1, double k2, double k3) {
    const int ia[3] = {i1, i2, i3};
    const double k[3] = {k1, k2, k3};
    std::complex<double> factor = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
      // A Nyquist mode keeps only the component that survives sampling.
      factor *= g.is_nyquist(axis, ia[axis]) ? std::complex<double>(std::cos(k[axis] * c[axis]))
                                             : std::polar(1.0, -k[axis] * c[axis]);
    }
    o[idx] *= factor;
  });
  return out;
}

}  // namespace

std::string_view to_string(SourceKind k) {
  switch (k) {
    case SourceKind::zero: return "zero";
    case SourceKind::mollified_delta: return "mollified_delta";
    case SourceKind::convolved_delta: return "convolved_delta";
    case SourceKind::custom_smooth: return "custom_smooth";
  }
  return "zero";
}

SourceKind source_kind_from_string(std::string_view s) {
  if (s == "zero") return SourceKind::zero;
  if (s == "mollified_delta") return SourceKind::mollified_delta;
  if (s == "convolved_delta") return SourceKind::convolved_delta;
  if (s == "custom_smooth") return SourceKind::custom_smooth;
  throw ConfigError("unknown source kind: " + std::string(s));
}

double mollifier_mass() {
  static const double mass = radial_integral(0.0);
  return mass;
}

double mollifier_transform(double kappa) { return radial_integral(kappa) / mollifier_mass(); }

Field mollified_delta(const SpectralGrid& grid, double eps, const Point3& center) {
  if (!(eps > 0.0)) throw ConfigError("mollifier width must be positive");
  if (eps >= 0.5 * std::min(1.0, 2.0 * grid.a())) {
    throw ConfigError("mollifier support does not fit in the periodic box");
  }
  check_center(grid, center);
  const double scale = 1.0 / (eps * eps * eps);
  return Field::from_function(grid, [&](double x1, double x2, double x3) {
    const double d1 = periodic_offset(x1, center[0], 1.0) / eps;
    const double d2 = periodic_offset(x2, center[1], 1.0) / eps;
    const double d3 = periodic_offset(x3, center[2], 2.0 * grid.a()) / eps;
    return scale * bump(d1 * d1 + d2 * d2 + d3 * d3);
  });
}

Field default_kernel(const SpectralGrid& grid, double radius) {
  const double a = grid.a();
  if (!(radius > 0.0) || radius >= 0.5 * a || radius >= 0.5) {
    throw ConfigError("kernel radius must be positive and below min(a, 1)/2");
  }
  auto lobe = [&](double x1, double x2, double x3, double z0) {
    const double d1 = periodic_offset(x1, 0.0, 1.0) / radius;
    const double d2 = periodic_offset(x2, 0.0, 1.0) / radius;
    const double d3 = periodic_offset(x3, z0, 2.0 * a) / radius;
    return std::exp(1.0) * bump(d1 * d1 + d2 * d2 + d3 * d3);
  };
  return Field::from_function(
      grid,
      [&](double x1, double x2, double x3) {
        return lobe(x1, x2, x3, -0.5 * a) - lobe(x1, x2, x3, 0.5 * a);
      },
      Parity::odd);
}

SourcePair build_source(const SourceSpec& spec, const SpectralGrid& grid) {
  switch (spec.kind) {
    case SourceKind::zero:
      return {Field(grid, Parity::odd), Field(grid, Parity::odd)};
    case SourceKind::mollified_delta: {
      Field d = mollified_delta(grid, spec.eps, spec.center);
      d *= spec.amplitude / mollifier_mass();
      Field s = parity_project(d, Parity::odd);
      return {s, s};
    }
    case SourceKind::custom_smooth: {
      if (!spec.kernel) throw ConfigError("custom_smooth source requires a kernel field");
      if (!(spec.kernel->grid() == grid)) throw ConfigError("kernel grid does not match");
      Field s = parity_project(spec.amplitude * *spec.kernel, Parity::odd);
      return {s, s};
    }
    case SourceKind::convolved_delta: {
      if (!spec.kernel) throw ConfigError("convolved_delta source requires a kernel field");
      if (!(spec.kernel->grid() == grid)) throw ConfigError("kernel grid does not match");
      if (!(spec.eps > 0.0)) throw ConfigError("mollifier width must be positive");
      check_center(grid, spec.center);
      Spectrum lim = translated(fft_forward(*spec.kernel), spec.center);
      lim *= spec.amplitude;
      lim.set_parity(Parity::none);
      Spectrum conv = lim;
      std::map<double, double> cache;
      auto c = conv.coeffs();
      for_each_mode(grid, [&](std::size_t idx, int, int, int, double k1, double k2, double k3) {
        const double kappa = spec.eps * std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
        auto it = cache.find(kappa);
        if (it == cache.end()) it = cache.emplace(kappa, mollifier_transform(kappa)).first;
        c[idx] *= it->second;
      });
      parity_project_in_place(lim, Parity::odd);
      parity_project_in_place(conv, Parity::odd);
      return {fft_inverse(conv), fft_inverse(lim)};
    }
  }
  throw ConfigError("unhandled source kind");
}

}  // namespace ppe::model

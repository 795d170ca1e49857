#include "ppe/analysis/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppe/analysis/energy.hpp"
#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::analysis {
namespace {

using cplx = std::complex<double>;

}  // namespace

double physical_linf(const Field& c) {
  const auto& g = c.grid();
  double m = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i3 = 0; i3 <= g.n3() / 2; ++i3) {
        const double z = g.coord(2, i3);
        m = std::max(m, std::abs(c(i1, i2, i3) - z / g.a()));
      }
  return m;
}

double slab_linf(const Field& f) {
  const auto& g = f.grid();
  double m = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i3 = 0; i3 <= g.n3() / 2; ++i3) m = std::max(m, std::abs(f(i1, i2, i3)));
  return m;
}

MaxPrincipleVerdict max_principle_check(const std::vector<double>& t,
                                        const std::vector<double>& linf, double c0_linf,
                                        double s_linf, double tol, bool with_time_term) {
  if (t.size() != linf.size()) throw ContractError("max_principle_check: size mismatch");
  MaxPrincipleVerdict v;
  v.t = t;
  v.linf = linf;
  v.worst_margin = -HUGE_VAL;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double b = 1.0 + c0_linf + (with_time_term ? s_linf * t[i] : 0.0);
    v.bound.push_back(b);
    const double margin = linf[i] - b;
    v.worst_margin = std::max(v.worst_margin, margin);
    if (margin > tol && v.pass) {
      v.pass = false;
      v.first_violation = t[i];
    }
  }
  return v;
}

double slab_integral(const Field& f) {
  const auto& g = f.grid();
  const Spectrum s = fft_forward(f);
  const double a = g.a();
  // Only horizontally constant modes survive. Mode k is e^{i k (z + a)} in box coordinates.
  cplx acc = s(0, 0, 0) * a;
  for (int i3 = 1; i3 < g.n3_half(); ++i3) {
    const double k = g.wavenumber(2, i3);
    const cplx w = (std::exp(cplx(0.0, k * a)) - 1.0) / cplx(0.0, k);
    const cplx term = s(0, 0, i3) * w;
    // The conjugate mode -k contributes the complex conjugate, except at Nyquist.
    acc += g.is_nyquist(2, i3) ? term : 2.0 * cplx(term.real(), 0.0);
  }
  return acc.real();
}

double mean_vertical_derivative(const Field& f, double z0) {
  const auto& g = f.grid();
  const Spectrum s = fft_forward(f);
  double acc = 0.0;
  for (int i3 = 1; i3 < g.n3_half(); ++i3) {
    const double k = g.derivative_wavenumber(2, i3);
    acc += 2.0 * (cplx(0.0, k) * s(0, 0, i3) * std::exp(cplx(0.0, k * (z0 + g.a())))).real();
  }
  return acc;
}

BudgetSample budget_sample(const hydro::HydroState& s, const Field& source, double k3) {
  const double a = s.c.grid().a();
  BudgetSample b;
  b.t = s.t;
  b.mass = slab_integral(s.c);
  // the solvers only see the resolved part of the source
  b.rate = slab_integral(fft_inverse(dealias(fft_forward(source)))) + slab_integral(s.u3) / a +
           k3 * (mean_vertical_derivative(s.c, 0.0) - mean_vertical_derivative(s.c, -a));
  return b;
}

BudgetVerdict budget_check(const std::vector<BudgetSample>& samples) {
  std::vector<double> t;
  for (const auto& s : samples) t.push_back(s.t);
  require_uniform(t);
  BudgetVerdict v;
  if (samples.empty()) return v;
  double integral = 0.0, abs_integral = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double h = t[i] - t[i - 1];
    integral += 0.5 * h * (samples[i].rate + samples[i - 1].rate);
    abs_integral += 0.5 * h * (std::abs(samples[i].rate) + std::abs(samples[i - 1].rate));
    v.final_defect = samples[i].mass - samples[0].mass - integral;
    v.max_defect = std::max(v.max_defect, std::abs(v.final_defect));
  }
  v.scale = abs_integral + std::abs(samples[0].mass);
  return v;
}

double budget_order(const std::vector<BudgetVerdict>& v) {
  if (v.size() != 3) throw ContractError("budget_order needs runs at dt, dt/2 and dt/4");
  const double d1 = v[0].final_defect - v[1].final_defect;
  const double d2 = v[1].final_defect - v[2].final_defect;
  if (d2 == 0.0) return d1 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::log2(std::abs(d1 / d2));
}

double linf_l2_difference(const std::vector<Field>& a, const std::vector<Field>& b) {
  if (a.size() != b.size()) throw ContractError("linf_l2_difference: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, l2_norm(a[i] - b[i]));
  return m;
}

}  // namespace ppe::analysis

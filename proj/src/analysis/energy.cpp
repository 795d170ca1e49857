#include "ppe/analysis/energy.hpp"

#include <algorithm>
#include <cmath>

#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::analysis {
namespace {

double grad_nu(const NormReport& r, const model::PhysicalParams& p) {
  return p.nu1 * r.grad[0] * r.grad[0] + p.nu2 * r.grad[1] * r.grad[1] + p.nu3 * r.grad[2] * r.grad[2];
}

}  // namespace

void require_uniform(const std::vector<double>& t) {
  if (t.size() < 2) return;
  const double h = t[1] - t[0];
  if (!(h > 0.0)) throw ContractError("sample times must increase");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(t[i]))) {
      throw ContractError("samples are not uniformly spaced in time");
    }
  }
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

EnergySample energy_sample(const aniso::AnisoState& s, const model::PhysicalParams& p,
                           const Field& source) {
  const double e2 = p.eps * p.eps;
  const NormReport r1 = norms(s.u1), r2 = norms(s.u2), r3 = norms(s.u3), rc = norms(s.c);
  EnergySample e;
  e.t = s.t;
  e.kinetic_h = 0.5 * (r1.l2 * r1.l2 + r2.l2 * r2.l2);
  e.kinetic_3_weighted = 0.5 * e2 * r3.l2 * r3.l2;
  e.concentration_l2 = 0.5 * rc.l2 * rc.l2;
  e.dissipation_visc_h = grad_nu(r1, p) + grad_nu(r2, p);
  e.dissipation_visc_3_weighted = e2 * grad_nu(r3, p);
  e.dissipation_c1 = p.eps * p.k1 * rc.grad[0] * rc.grad[0];
  e.dissipation_c = p.k2 * rc.grad[1] * rc.grad[1] + p.k3 * rc.grad[2] * rc.grad[2];
  e.source_work = inner(source, s.c);
  e.shift_work = inner(s.u3, s.c) / p.a;
  return e;
}

std::vector<double> cumulative_simpson(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw ContractError("cumulative_simpson: size mismatch");
  std::vector<double> out(t.size(), 0.0);
  if (t.size() < 2) return out;
  require_uniform(t);
  const double h = t[1] - t[0];
  if (t.size() == 2) {
    out[1] = 0.5 * h * (y[0] + y[1]);
    return out;
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
    } else if (i == 1) {
      out[i] = h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-y[i - 2] + 8.0 * y[i - 1] + 5.0 * y[i]);
    }
  }
  return out;
}

EnergyBudget energy_check(std::vector<EnergySample> samples) {
  if (samples.empty()) throw ContractError("energy_check needs at least one sample");
  std::vector<double> t;
  for (const auto& s : samples) t.push_back(s.t);
  require_uniform(t);
  EnergyBudget b;
  const double e0 = samples.front().energy();
  std::vector<double> d, w;
  for (const auto& s : samples) {
    d.push_back(s.dissipation());
    w.push_back(s.work());
  }
  const std::vector<double> int_d = cumulative_simpson(t, d);
  const std::vector<double> int_w = cumulative_simpson(t, w);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    b.slack.push_back(samples[i].energy() + int_d[i] - e0 - int_w[i]);
  }
  for (double s : b.slack) {
    b.max_positive_slack = std::max(b.max_positive_slack, s);
    b.max_abs_slack = std::max(b.max_abs_slack, std::abs(s));
  }
  b.scale = e0 + int_d.back();
  b.samples = std::move(samples);
  return b;
}

SlackOrder slack_order(const std::vector<EnergyBudget>& runs) {
  SlackOrder o;
  for (const auto& r : runs) o.max_abs_slack.push_back(r.max_abs_slack);
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const double den = o.max_abs_slack[i];
    o.ratios.push_back(den > 0.0 ? o.max_abs_slack[i - 1] / den : HUGE_VAL);
  }
  o.min_ratio = o.ratios.empty() ? 0.0 : *std::min_element(o.ratios.begin(), o.ratios.end());
  return o;
}

}  // namespace ppe::analysis

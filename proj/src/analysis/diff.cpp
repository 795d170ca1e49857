#include "ppe/analysis/diff.hpp"

#include <algorithm>
#include <cmath>

#include "ppe/analysis/energy.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::analysis {

const std::array<std::string_view, 7>& diff_keys() {
  static const std::array<std::string_view, 7> keys{"sup_Uh_l2",  "sup_Uh_h1",   "sup_Uh_h2",
                                                    "sup_eps_U3", "int_grad_Uh", "sup_C_h1",
                                                    "int_gradd_C_h1"};
  return keys;
}

double DiffRecord::get(std::string_view key) const {
  if (key == "sup_Uh_l2") return sup_Uh_l2;
  if (key == "sup_Uh_h1") return sup_Uh_h1;
  if (key == "sup_Uh_h2") return sup_Uh_h2;
  if (key == "sup_eps_U3") return sup_eps_U3;
  if (key == "int_grad_Uh") return int_grad_Uh;
  if (key == "sup_C_h1") return sup_C_h1;
  if (key == "int_gradd_C_h1") return int_gradd_C_h1;
  throw ConfigError("unknown difference norm: " + std::string(key));
}

void DiffAccumulator::add(const aniso::AnisoState& a, const hydro::HydroState& h) {
  if (std::abs(a.t - h.t) > 1e-12 * std::max(1.0, std::abs(a.t))) {
    throw ContractError("diff_norms: sample times differ");
  }
  const NormReport n1 = norms(a.u1 - h.u1), n2 = norms(a.u2 - h.u2);
  const NormReport n3 = norms(eps_ * (a.u3 - h.u3));
  const Spectrum dc = fft_forward(a.c - h.c);
  const NormReport nc = norms(dc);
  auto sq = [](double x) { return x * x; };

  t_.push_back(a.t);
  sup_[0] = std::max(sup_[0], std::sqrt(sq(n1.l2) + sq(n2.l2)));
  sup_[1] = std::max(sup_[1], std::sqrt(sq(n1.h1) + sq(n2.h1)));
  sup_[2] = std::max(sup_[2], std::sqrt(sq(n1.h2) + sq(n2.h2)));
  sup_[3] = std::max(sup_[3], n3.h2);
  sup_[4] = std::max(sup_[4], nc.h1);
  double g = 0.0;
  for (const NormReport* r : {&n1, &n2, &n3}) g += sq(r->h3) - sq(r->l2);
  grad_uh_.push_back(std::max(0.0, g));
  gradd_c_.push_back(weighted_square(dc, [](double k1, double k2, double k3) {
    return (k2 * k2 + k3 * k3) * (1.0 + k1 * k1 + k2 * k2 + k3 * k3);
  }));
}

DiffRecord DiffAccumulator::finish() const {
  require_uniform(t_);
  DiffRecord r;
  r.eps = eps_;
  r.sup_Uh_l2 = sup_[0];
  r.sup_Uh_h1 = sup_[1];
  r.sup_Uh_h2 = sup_[2];
  r.sup_eps_U3 = sup_[3];
  r.sup_C_h1 = sup_[4];
  r.int_grad_Uh = std::sqrt(trapezoid(t_, grad_uh_));
  r.int_gradd_C_h1 = std::sqrt(trapezoid(t_, gradd_c_));
  return r;
}

DiffRecord diff_norms(const std::vector<aniso::AnisoState>& aniso_traj,
                      const std::vector<hydro::HydroState>& hydro_traj, double eps) {
  if (aniso_traj.size() != hydro_traj.size()) {
    throw ContractError("diff_norms: trajectories have different lengths");
  }
  DiffAccumulator acc(eps);
  for (std::size_t i = 0; i < aniso_traj.size(); ++i) acc.add(aniso_traj[i], hydro_traj[i]);
  return acc.finish();
}

RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size()) throw ContractError("fit_rate: size mismatch");
  if (eps.size() < 3) throw ContractError("fit_rate needs at least three points");
  std::vector<double> sorted = eps;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractError("fit_rate: eps values must be distinct");
  }
  RateFit f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !(values[i] > 0.0)) throw ContractError("fit_rate: values must be positive");
    f.points.push_back({std::log(eps[i]), std::log(values[i])});
    mx += f.points.back()[0];
    my += f.points.back()[1];
  }
  const double n = static_cast<double>(eps.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : f.points) {
    sxx += (p[0] - mx) * (p[0] - mx);
    sxy += (p[0] - mx) * (p[1] - my);
    syy += (p[1] - my) * (p[1] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return f;
}

RateFit fit_rate(const std::vector<DiffRecord>& records, std::string_view key) {
  std::vector<double> eps, values;
  for (const auto& r : records) {
    eps.push_back(r.eps);
    values.push_back(r.get(key));
  }
  return fit_rate(eps, values);
}

}  // namespace ppe::analysis

#pragma once

#include <vector>

#include "ppe/aniso/solver.hpp"

namespace ppe::analysis {

/// Instantaneous terms of the anisotropic energy balance.
struct EnergySample {
  double t = 0.0;
  double kinetic_h = 0.0;            // (|u1|^2 + |u2|^2) / 2
  double kinetic_3_weighted = 0.0;   // eps^2 |u3|^2 / 2
  double concentration_l2 = 0.0;     // |c|^2 / 2
  double dissipation_visc_h = 0.0;   // |grad_nu u_h|^2
  double dissipation_visc_3_weighted = 0.0;  // eps^2 |grad_nu u3|^2
  double dissipation_c1 = 0.0;       // eps K1 |d1 c|^2
  double dissipation_c = 0.0;        // K2 |d2 c|^2 + K3 |d3 c|^2
  double source_work = 0.0;          // (s, c)
  double shift_work = 0.0;           // (u3, c) / a from the shifted concentration

  double energy() const { return kinetic_h + kinetic_3_weighted + concentration_l2; }
  double dissipation() const {
    return dissipation_visc_h + dissipation_visc_3_weighted + dissipation_c1 + dissipation_c;
  }
  double work() const { return source_work + shift_work; }
};

EnergySample energy_sample(const aniso::AnisoState& s, const model::PhysicalParams& p,
                           const Field& source);

/// Time series of the balance E(t) + int D <= E(0) + int W, with the slack
/// E(t) + int D - E(0) - int W. The time integrals use cumulative_simpson.
struct EnergyBudget {
  std::vector<EnergySample> samples;
  std::vector<double> slack;
  double max_positive_slack = 0.0;
  double max_abs_slack = 0.0;
  double scale = 0.0;  // E(0) + int_0^T D, used for relative slack
  double relative_positive_slack() const { return scale > 0.0 ? max_positive_slack / scale : 0.0; }
};

/// Throws ContractError when the samples are not uniformly spaced in time.
EnergyBudget energy_check(std::vector<EnergySample> samples);

/// Observed order of the slack across successive dt halvings, from the
/// largest |slack| of each run.
struct SlackOrder {
  std::vector<double> max_abs_slack;
  std::vector<double> ratios;  // slack(dt) / slack(dt / 2)
  double min_ratio = 0.0;
};
SlackOrder slack_order(const std::vector<EnergyBudget>& by_halving_dt);

/// Running integral of y on uniformly spaced samples: composite Simpson at
/// even indices, the one-interval rule of the local quadratic at odd ones.
std::vector<double> cumulative_simpson(const std::vector<double>& t, const std::vector<double>& y);

/// Trapezoid rule on uniformly spaced samples.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

/// Throws ContractError when t is not uniformly spaced.
void require_uniform(const std::vector<double>& t);

}  // namespace ppe::analysis

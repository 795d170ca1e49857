#pragma once

#include <vector>

#include "ppe/core/field.hpp"
#include "ppe/hydro/solver.hpp"

namespace ppe::analysis {

/// sup over the physical slab -a <= z <= 0 of |c - z/a|, the unshifted
/// concentration.
double physical_linf(const Field& c_shifted);

/// sup over the physical slab of |f|.
double slab_linf(const Field& f);

struct MaxPrincipleVerdict {
  std::vector<double> t, linf, bound;
  double worst_margin = 0.0;  // max over samples of linf - bound
  double first_violation = -1.0;  // time of the first violation, -1 if none
  bool pass = true;
};

/// ||c(t)||_inf <= 1 + ||c0||_inf + ||s||_inf t + tol at every sample, all
/// norms taken on the physical slab for the unshifted concentration.
/// `with_time_term = false` drops the ||s|| t term (negative control).
MaxPrincipleVerdict max_principle_check(const std::vector<double>& t,
                                        const std::vector<double>& linf, double c0_linf,
                                        double s_linf, double tol = 1e-6,
                                        bool with_time_term = true);

/// Integral of f over the physical slab Omega_2 x (-a, 0), exact for the
/// trigonometric interpolant.
double slab_integral(const Field& f);

/// Horizontal average of d3 f at z = z0.
double mean_vertical_derivative(const Field& f, double z0);

/// Terms of the slab tracer budget, with the source truncated as in the solvers:
///   d/dt int c = int s + (1/a) int u3 + K3 int_{Omega_2} (d3 c|_{z=0} - d3 c|_{z=-a}).
struct BudgetSample {
  double t = 0.0;
  double mass = 0.0;
  double rate = 0.0;
};

BudgetSample budget_sample(const hydro::HydroState& s, const Field& source, double k3);

struct BudgetVerdict {
  double max_defect = 0.0;   // max_t |mass(t) - mass(0) - int_0^t rate|
  double final_defect = 0.0; // signed defect at the last sample
  double scale = 0.0;        // int_0^T |rate| + |mass(0)|
  double relative() const { return scale > 0.0 ? max_defect / scale : max_defect; }
};

BudgetVerdict budget_check(const std::vector<BudgetSample>& samples);

/// Observed time order of the final defect from runs at dt, dt/2, dt/4.
/// Differences of successive runs cancel the dt-independent truncation of
/// the advective flux, leaving the time-stepping error.
double budget_order(const std::vector<BudgetVerdict>& by_halving_dt);

/// sup_t ||a(t) - b(t)||_{L2} for two series sampled at the same times.
double linf_l2_difference(const std::vector<Field>& a, const std::vector<Field>& b);

}  // namespace ppe::analysis

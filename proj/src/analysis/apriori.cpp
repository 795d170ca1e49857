#include "ppe/analysis/apriori.hpp"

#include <algorithm>
#include <cmath>

#include "ppe/analysis/energy.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::analysis {

const std::array<std::string_view, apriori_count>& apriori_names() {
  static const std::array<std::string_view, apriori_count> names{
      "Linf_L2_u1",      "Linf_L2_u2",      "Linf_L2_eps_u3",   "Linf_L2_c",
      "L2_L2_u3",        "L2_H1_u1",        "L2_H1_u2",         "L2_H1_eps_u3",
      "L2_L2_sqrteps_d1c", "L2_L2_d2c",     "L2_L2_d3c"};
  return names;
}

void AprioriSeries::add(const aniso::AnisoState& s) {
  const NormReport r1 = norms(s.u1), r2 = norms(s.u2), r3 = norms(s.u3), rc = norms(s.c);
  const double e = eps_;
  t_.push_back(s.t);
  rows_.push_back({r1.l2, r2.l2, e * r3.l2, rc.l2, r3.l2 * r3.l2, r1.h1 * r1.h1, r2.h1 * r2.h1,
                   e * e * r3.h1 * r3.h1, e * rc.grad[0] * rc.grad[0], rc.grad[1] * rc.grad[1],
                   rc.grad[2] * rc.grad[2]});
}

std::array<double, apriori_count> AprioriSeries::values() const {
  require_uniform(t_);
  std::array<double, apriori_count> out{};
  for (std::size_t q = 0; q < apriori_count; ++q) {
    if (q < 4) {
      for (const auto& r : rows_) out[q] = std::max(out[q], r[q]);
    } else {
      std::vector<double> y;
      for (const auto& r : rows_) y.push_back(r[q]);
      out[q] = std::sqrt(std::max(0.0, trapezoid(t_, y)));
    }
  }
  return out;
}

AprioriVerdict apriori_check(const std::vector<AprioriSummary>& runs, double factor) {
  if (runs.size() < 3) throw ContractError("apriori_check needs at least three runs");
  for (const auto& r : runs) {
    if (r.fingerprint != runs.front().fingerprint) {
      throw ContractError("apriori_check: runs differ in more than eps");
    }
  }
  std::vector<const AprioriSummary*> sorted;
  for (const auto& r : runs) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return x->eps < y->eps; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->eps == sorted[i - 1]->eps) throw ContractError("apriori_check: repeated eps");
  }
  AprioriVerdict v;
  v.pass = true;
  for (std::size_t q = 0; q < apriori_count; ++q) {
    v.small_max[q] = std::max(sorted[0]->values[q], sorted[1]->values[q]);
    for (std::size_t i = 2; i < sorted.size(); ++i) v.ref_max[q] = std::max(v.ref_max[q], sorted[i]->values[q]);
    v.ratio[q] = v.ref_max[q] > 0.0 ? v.small_max[q] / v.ref_max[q] : (v.small_max[q] > 0.0 ? HUGE_VAL : 0.0);
    if (!(v.ratio[q] <= factor)) v.pass = false;
  }
  return v;
}

}  // namespace ppe::analysis

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ppe/aniso/solver.hpp"
#include "ppe/hydro/solver.hpp"

namespace ppe::analysis {

/// Norms of the anisotropic-minus-hydrostatic differences U_h, U3, C.
struct DiffRecord {
  double eps = 0.0;
  double sup_Uh_l2 = 0.0;
  double sup_Uh_h1 = 0.0;
  double sup_Uh_h2 = 0.0;
  double sup_eps_U3 = 0.0;       // sup_t ||eps U3||_{H2}
  double int_grad_Uh = 0.0;      // (int_0^T ||grad (U_h, eps U3)||_{H2}^2)^{1/2}
  double sup_C_h1 = 0.0;
  double int_gradd_C_h1 = 0.0;   // (int_0^T ||(d2, d3) C||_{H1}^2)^{1/2}
  std::string run_id;

  double get(std::string_view key) const;
};

/// Keys accepted by DiffRecord::get and fit_rate, in declaration order.
const std::array<std::string_view, 7>& diff_keys();

/// Accumulates DiffRecord entries from paired samples at equal times.
class DiffAccumulator {
 public:
  explicit DiffAccumulator(double eps) : eps_(eps) {}
  void add(const aniso::AnisoState& a, const hydro::HydroState& h);
  DiffRecord finish() const;

 private:
  double eps_;
  std::vector<double> t_;
  std::array<double, 5> sup_{};
  std::vector<double> grad_uh_;
  std::vector<double> gradd_c_;
};

/// Throws ContractError on mismatched sample times.
DiffRecord diff_norms(const std::vector<aniso::AnisoState>& aniso_traj,
                      const std::vector<hydro::HydroState>& hydro_traj, double eps);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::array<double, 2>> points;  // (log eps, log norm)
};

/// Least-squares line through (log eps, log value). Needs >= 3 distinct eps
/// and positive values.
RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& values);
RateFit fit_rate(const std::vector<DiffRecord>& records, std::string_view key);

}  // namespace ppe::analysis

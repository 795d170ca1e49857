#include "ppe/aniso/stepping.hpp"

#include <cmath>
#include <limits>

#include "ppe/core/errors.hpp"

namespace ppe {

double StepControl::dt_cap(const model::PhysicalParams& p) const {
  if (!eps_dt_coupling || p.f == 0.0) return std::numeric_limits<double>::infinity();
  return cfl_safety * p.eps / (2.0 * p.f);
}

void StepControl::validate(const model::PhysicalParams& p) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) throw ConfigError("cfl_safety must lie in (0, 1)");
  const double cap = dt_cap(p);
  if (dt > cap) {
    throw ConfigError("dt=" + std::to_string(dt) + " exceeds the eps cap " + std::to_string(cap));
  }
  steps();
}

long StepControl::steps() const {
  const double ratio = t_end / dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio) {
    throw ConfigError("t_end must be a whole multiple of dt");
  }
  return n;
}

}  // namespace ppe

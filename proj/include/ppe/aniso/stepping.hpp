#pragma once

#include <functional>
#include <optional>

#include "ppe/core/field.hpp"
#include "ppe/model/params.hpp"

namespace ppe {

/// Time-step settings shared by both solvers.
struct StepControl {
  double dt = 1e-3;
  double t_end = 0.5;
  double cfl_safety = 0.5;
  bool eps_dt_coupling = true;  // enforce dt <= cfl_safety * eps / (2 f)

  /// Largest admissible dt for the anisotropic solver; infinite when f = 0
  /// or the coupling is disabled.
  double dt_cap(const model::PhysicalParams& p) const;

  /// Throws ConfigError for a non-positive dt or t_end, a cfl_safety outside
  /// (0, 1), or a dt above the cap.
  void validate(const model::PhysicalParams& p) const;

  /// Number of steps to reach t_end; t_end must be a multiple of dt.
  long steps() const;

  bool operator==(const StepControl&) const = default;
};

/// Extra body forces added to the right-hand sides; used by manufactured
/// solutions. f3 is ignored by the hydrostatic solver.
struct ForcingSample {
  Field f1, f2, f3, fc;
};
using Forcing = std::function<ForcingSample(double t)>;

}  // namespace ppe

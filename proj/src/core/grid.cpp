#include "ppe/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ppe/core/errors.hpp"

namespace ppe {

SpectralGrid::SpectralGrid(int n1, int n2, int n3, double a) : dims_{n1, n2, n3}, a_(a) {
  for (int axis = 0; axis < 3; ++axis) {
    const int n = dims_[axis];
    if (n < 8 || n % 2 != 0) {
      throw ConfigError("grid size along axis " + std::to_string(axis + 1) +
                        " must be even and >= 8, got " + std::to_string(n));
    }
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ConfigError("half-height a must be positive and finite");
  }
}

double SpectralGrid::wavenumber(int axis, int idx) const {
  return 2.0 * std::numbers::pi * signed_mode(axis, idx) / length(axis);
}

}  // namespace ppe

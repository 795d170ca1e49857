#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "ppe/core/field.hpp"

namespace ppe::model {

using Point3 = std::array<double, 3>;

enum class SourceKind { zero, mollified_delta, convolved_delta, custom_smooth };

std::string_view to_string(SourceKind k);
SourceKind source_kind_from_string(std::string_view s);

struct SourceSpec {
  SourceKind kind = SourceKind::zero;
  double eps = 1.0;               // mollifier width, tied to the aspect ratio
  Point3 center{0.5, 0.5, 0.0};   // location of the point source
  double amplitude = 1.0;
  std::optional<Field> kernel;    // smooth kernel for convolved / custom sources
};

/// Sources for the anisotropic run (s_eps) and the hydrostatic run (s_limit).
struct SourcePair {
  Field s_eps;
  Field s_limit;
};

/// Integral of exp(1/(|y|^2-1)) over the unit ball of R^3.
double mollifier_mass();

/// Fourier transform of the unit-mass mollifier of width 1 at |k| = kappa.
double mollifier_transform(double kappa);

/// (1/eps^3) exp(1/(|x/eps|^2 - 1)) for |x - center| < eps, zero outside,
/// with the distance measured on the periodic box.
Field mollified_delta(const SpectralGrid& grid, double eps, const Point3& center);

/// Odd-in-z pair of C-infinity bumps of the given radius centred at
/// (0, 0, -a/2) (positive) and (0, 0, a/2) (negative), peak value 1.
Field default_kernel(const SpectralGrid& grid, double radius = 0.3);

/// Builds the anisotropic and hydrostatic source fields. Both are odd in z.
SourcePair build_source(const SourceSpec& spec, const SpectralGrid& grid);

}  // namespace ppe::model

#pragma once

#include <numbers>

namespace ppe::model {

/// Model constants in rescaled (epsilon-free domain) variables.
struct PhysicalParams {
  double eps = 1.0;  // aspect ratio, also the downwind diffusivity scale
  double nu1 = 1.0;
  double nu2 = 1.0;
  double nu3 = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double k3 = 1.0;
  double f = 1.0;                              // Earth rotation rate
  double theta = std::numbers::pi / 4.0;       // downwind axis vs east
  double phi = std::numbers::pi / 4.0;         // latitude
  double a = 1.0;                              // half-height of the periodic box

  /// Throws ConfigError when a constant is out of range.
  void validate() const;

  bool operator==(const PhysicalParams&) const = default;
};

/// Components of 2*omega in downwind-matching coordinates.
struct Coriolis {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Rotates f (0, cos phi, sin phi) by theta about the vertical axis and doubles it.
Coriolis rotate_coriolis(double f, double theta, double phi);
inline Coriolis rotate_coriolis(const PhysicalParams& p) {
  return rotate_coriolis(p.f, p.theta, p.phi);
}

/// Quantities on the thin physical domain 0 < z < eps a.
struct ThinDomainQuantities {
  double x = 0, y = 0, z = 0;
  double v_x = 0, v_y = 0, v_z = 0;
  double nu_x = 0, nu_y = 0, nu_z = 0;
  double K_x = 0, K_y = 0, K_z = 0;
  double P = 0, Q = 0, q = 0;  // concentration, source, pressure
};

/// The same quantities after rescaling to the epsilon-free domain.
struct RescaledQuantities {
  double x1 = 0, x2 = 0, x3 = 0;
  double u1 = 0, u2 = 0, u3 = 0;
  double nu1 = 0, nu2 = 0, nu3 = 0;
  double K1 = 0, K2 = 0, K3 = 0;
  double c = 0, s = 0, p = 0;
};

RescaledQuantities scale_forward(const ThinDomainQuantities& q, double eps);
ThinDomainQuantities scale_inverse(const RescaledQuantities& r, double eps);

}  // namespace ppe::model

#include "ppe/model/params.hpp"

#include <cmath>

#include "ppe/core/errors.hpp"

namespace ppe::model {

void PhysicalParams::validate() const {
  if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("eps must lie in (0, 1]");
  for (double v : {nu1, nu2, nu3}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("viscosities must be positive");
  }
  for (double v : {k1, k2, k3}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("diffusivities must be positive");
  }
  if (!(f >= 0.0) || !std::isfinite(f)) throw ConfigError("rotation rate f must be >= 0");
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw ConfigError("angles must be finite");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("half-height a must be positive");
}

Coriolis rotate_coriolis(double f, double theta, double phi) {
  return Coriolis{-2.0 * f * std::sin(theta) * std::cos(phi),
                  2.0 * f * std::cos(theta) * std::cos(phi), 2.0 * f * std::sin(phi)};
}

RescaledQuantities scale_forward(const ThinDomainQuantities& q, double eps) {
  if (!(eps > 0.0)) throw ConfigError("scaling requires eps > 0");
  RescaledQuantities r;
  r.x1 = q.x;
  r.x2 = q.y;
  r.x3 = q.z / eps;
  r.u1 = q.v_x;
  r.u2 = q.v_y;
  r.u3 = q.v_z / eps;
  r.nu1 = q.nu_x;
  r.nu2 = q.nu_y;
  r.nu3 = q.nu_z / (eps * eps);
  r.K1 = q.K_x / eps;  // downwind diffusivity K_x = eps K1
  r.K2 = q.K_y;
  r.K3 = q.K_z / (eps * eps);
  r.c = eps * q.P;
  r.s = eps * q.Q;
  r.p = q.q;
  return r;
}

ThinDomainQuantities scale_inverse(const RescaledQuantities& r, double eps) {
  if (!(eps > 0.0)) throw ConfigError("scaling requires eps > 0");
  ThinDomainQuantities q;
  q.x = r.x1;
  q.y = r.x2;
  q.z = eps * r.x3;
  q.v_x = r.u1;
  q.v_y = r.u2;
  q.v_z = eps * r.u3;
  q.nu_x = r.nu1;
  q.nu_y = r.nu2;
  q.nu_z = eps * eps * r.nu3;
  q.K_x = eps * r.K1;
  q.K_y = r.K2;
  q.K_z = eps * eps * r.K3;
  q.P = r.c / eps;
  q.Q = r.s / eps;
  q.q = r.p;
  return q;
}

}  // namespace ppe::model

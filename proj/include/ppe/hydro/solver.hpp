#pragma once

#include <cstdint>
#include <functional>

#include "ppe/aniso/stepping.hpp"
#include "ppe/core/field.hpp"
#include "ppe/model/params.hpp"

namespace ppe::hydro {

struct HydroOptions {
  double mu = 0.0;  // weight of the optional mu d11 c regularisation
  void validate() const;
  bool operator==(const HydroOptions&) const = default;
};

/// Primitive-equation state. u3 is diagnostic and p_s is stored as a
/// z-independent field.
struct HydroState {
  Field u1, u2, c, p_s;
  double t = 0.0;
  Field u3;
};

/// Makes a state from the prognostic fields, diagnosing u3.
HydroState make_state(Field u1, Field u2, Field c, double t = 0.0);

/// ||div_h of the vertical average of u_h||_{L2}.
double barotropic_residual(const Field& u1, const Field& u2);

/// u3 = -int_{-a}^{z} div_h u_h, computed as a spectral antiderivative in z.
/// Throws ContractError if the barotropic constraint does not hold.
Field diagnose_u3(const Field& u1, const Field& u2);
Spectrum diagnose_u3(const Spectrum& u1, const Spectrum& u2);

struct HydroTendency {
  Field f1, f2, fc;
};

/// Full right-hand sides without the surface pressure gradient.
HydroTendency tendency_h(const HydroState& s, const model::PhysicalParams& p, const Field& source,
                         const HydroOptions& opts);

struct BarotropicProjection {
  Field g1, g2, p_s;
};

/// Removes the horizontal gradient of p_s that makes the vertical average
/// of (G1, G2) horizontally divergence free.
BarotropicProjection project_barotropic(const Field& f1, const Field& f2);
void project_barotropic_in_place(Spectrum& f1, Spectrum& f2, Spectrum* p_s = nullptr);

/// One integrating-factor RK2 step.
HydroState step_hydro(const HydroState& s, const model::PhysicalParams& p, const Field& source,
                      const StepControl& ctrl, const HydroOptions& opts,
                      const Forcing& forcing = {});

/// Called on the initial state and after every step; return false to stop.
using HydroObserver = std::function<bool(const HydroState&)>;

HydroState integrate_hydro(HydroState s, const model::PhysicalParams& p, const Field& source,
                           const StepControl& ctrl, const HydroOptions& opts,
                           const HydroObserver& observe = {}, const Forcing& forcing = {});

}  // namespace ppe::hydro

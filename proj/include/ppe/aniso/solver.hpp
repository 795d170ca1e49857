#pragma once

#include <cstdint>
#include <functional>

#include "ppe/aniso/stepping.hpp"
#include "ppe/core/field.hpp"
#include "ppe/model/params.hpp"

namespace ppe::aniso {

/// Scaled anisotropic state; c is the shifted concentration c + z/a.
struct AnisoState {
  Field u1, u2, u3, c, p;
  double t = 0.0;
};

/// ||d1 u1 + d2 u2 + d3 u3||_{L2}.
double divergence_norm(const AnisoState& s);

/// ||grad u||_{L2} over all nine components.
double velocity_gradient_norm(const AnisoState& s);

struct AnisoTendency {
  Field f1, f2, f3, fc;
};

/// Right-hand sides of the momentum and shifted concentration equations,
/// without the pressure gradient. The vertical momentum equation is divided
/// by eps^2. Products are dealiased.
AnisoTendency tendency(const AnisoState& s, const model::PhysicalParams& p, const Field& source);

struct CoriolisForce {
  Field c1, c2, c3;
};

/// Coriolis accelerations as they appear in the tendencies:
/// (gamma u2 - eps beta u3, -gamma u1 + eps alpha u3, (beta u1 - alpha u2) / eps).
CoriolisForce coriolis(const AnisoState& s, const model::PhysicalParams& p);

/// Pointwise u1 c1 + u2 c2 + eps^2 u3 c3, which vanishes identically.
Field coriolis_work(const AnisoState& s, const model::PhysicalParams& p);

struct WeightedProjection {
  Field g1, g2, g3, p;
};

/// G = F - (d1 p, d2 p, d3 p / eps^2) with p chosen so that div G = 0.
WeightedProjection project_weighted(const Field& f1, const Field& f2, const Field& f3, double eps);
void project_weighted_in_place(Spectrum& f1, Spectrum& f2, Spectrum& f3, double eps,
                               Spectrum* p = nullptr);

/// One integrating-factor RK2 step. The eps cap on dt is checked when the
/// coupling is enabled.
AnisoState step(const AnisoState& s, const model::PhysicalParams& p, const Field& source,
                const StepControl& ctrl, const Forcing& forcing = {});

/// Random band-limited initial data with the declared parities, zero
/// horizontal means and zero divergence. The horizontal velocity also
/// satisfies the barotropic constraint and u3 is its diagnostic vertical
/// velocity, so the same data is admissible for the hydrostatic solver.
/// `amplitude` is the rms of u_h and of c.
AnisoState init_random_state(const SpectralGrid& grid, std::uint64_t seed, double amplitude,
                             int bandlimit);

/// Called after every step; return false to stop early.
using StepObserver = std::function<bool(const AnisoState&)>;

/// Steps from s to ctrl.t_end, calling `observe` on the initial state and
/// after every step.
AnisoState integrate(AnisoState s, const model::PhysicalParams& p, const Field& source,
                     const StepControl& ctrl, const StepObserver& observe = {},
                     const Forcing& forcing = {});

}  // namespace ppe::aniso

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ppe/aniso/solver.hpp"
#include "ppe/hydro/solver.hpp"

namespace ppe::analysis::mms {

/// Value and first three derivatives of a function of one variable.
struct Jet3 {
  std::array<double, 4> d{0.0, 0.0, 0.0, 0.0};

  static Jet3 variable(double x) { return {{x, 1.0, 0.0, 0.0}}; }
  static Jet3 constant(double c) { return {{c, 0.0, 0.0, 0.0}}; }
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(double s, const Jet3& a);
Jet3 exp(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);

using Profile = std::function<Jet3(const Jet3& x)>;

/// mean + amp sin(omega t + phase)
struct TimeFactor {
  double mean = 1.0, amp = 0.0, omega = 0.0, phase = 0.0;
  double value(double t) const;
  double derivative(double t) const;
};

/// coeff * T(t) * g1(x1) g2(x2) g3(x3)
struct SeparableTerm {
  double coeff = 1.0;
  TimeFactor time;
  std::array<Profile, 3> factor;
};

/// Sum of separable terms with exact derivatives up to order 3 per axis.
struct Manufactured {
  std::vector<SeparableTerm> terms;

  /// d^{o1}_1 d^{o2}_2 d^{o3}_3 (optionally d_t) sampled on the grid.
  Field eval(const SpectralGrid& g, double t, std::array<int, 3> orders = {0, 0, 0},
             bool time_derivative = false) const;
};

/// Exact solution: velocity = curl psi (divergence free, admissible for both
/// solvers when psi1, psi2 are odd and psi3 even in z) and an odd c.
struct Problem {
  std::array<Manufactured, 3> psi;
  Manufactured c;
};

/// Smooth exp-of-trigonometric data with time dependence. `sharpness`
/// controls how fast the Fourier coefficients decay.
Problem default_problem(double a, double sharpness = 0.5, double velocity_scale = 0.3);

/// Component i (0..2) of curl psi with extra derivative orders.
Field velocity(const Problem& pb, const SpectralGrid& g, int i, double t,
               std::array<int, 3> orders = {0, 0, 0}, bool time_derivative = false);

aniso::AnisoState exact_aniso(const Problem& pb, const SpectralGrid& g, double t);
hydro::HydroState exact_hydro(const Problem& pb, const SpectralGrid& g, double t);

/// Body forces that make the exact solution solve the system with zero source.
Forcing aniso_forcing(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p);
Forcing hydro_forcing(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p,
                      const hydro::HydroOptions& opts);

/// Largest relative L2 error over the prognostic fields at t_end.
double aniso_error(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p,
                   const StepControl& ctrl);
double hydro_error(const Problem& pb, const SpectralGrid& g, const model::PhysicalParams& p,
                   const StepControl& ctrl, const hydro::HydroOptions& opts);

}  // namespace ppe::analysis::mms

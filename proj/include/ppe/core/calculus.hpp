#pragma once

#include <array>

#include "ppe/core/field.hpp"

namespace ppe {

/// Spectral derivative along axis 0, 1 or 2 (x1, x2, x3) of order 1 or 2.
/// The Nyquist mode is dropped for first derivatives.
Field derive(const Field& f, int axis, int order);
Spectrum derive(const Spectrum& s, int axis, int order);

/// 2/3-rule truncation: zero every mode with |m| >= n/3 on any axis.
Spectrum dealias(const Spectrum& s);
void dealias_in_place(Spectrum& s);
bool is_resolved(const SpectralGrid& grid, int i1, int i2, int i3);

/// f(x1, x2, -x3) evaluated on the grid.
Field reflect_z(const Field& f);

/// ||f -+ R f||_{L2}, sign chosen by the declared parity.
double parity_residual(const Field& f);

/// Even or odd part of f; the result carries the requested parity.
Field parity_project(const Field& f, Parity p);
void parity_project_in_place(Spectrum& s, Parity p);

/// Dealiased spectrum of u . grad q, with the velocity given on the grid.
Spectrum advect(const Field& u1, const Field& u2, const Field& u3, const Spectrum& q);

/// sum_i coeff_i d_ii s, the anisotropic Laplacian with diagonal weights.
Spectrum diffuse(const Spectrum& s, const std::array<double, 3>& coeff);

/// Multiplies each mode by exp(-dt sum_i coeff_i k_i^2).
void apply_heat_factor(Spectrum& s, const std::array<double, 3>& coeff, double dt);

/// Keep only the modes with |m_i| <= limit on every axis.
Spectrum band_limit(const Spectrum& s, int limit);

}  // namespace ppe

#pragma once

#include <cstdint>
#include <vector>

#include "ppe/core/field.hpp"

namespace ppe::analysis {

/// Both sides of the two vertically integrated trilinear inequalities for
/// one triplet (f, g, h). The z integrals run over the full period.
struct LadyzhenskayaTerms {
  double lhs = 0.0;   // | int_{Omega_2} (int f dz)(int g h dz) |
  double rhs1 = 0.0;  // |f|^1/2 (|f|^1/2 + |grad_h f|^1/2) |g| |h|^1/2 (|h|^1/2 + |grad_h h|^1/2)
  double rhs2 = 0.0;  // |f| |g|^1/2 (|g|^1/2 + |grad_h g|^1/2) |h|^1/2 (|h|^1/2 + |grad_h h|^1/2)
};

LadyzhenskayaTerms ladyzhenskaya_terms(const Field& f, const Field& g, const Field& h);

struct LadyzhenskayaStats {
  std::vector<double> ratio1, ratio2;
  int skipped = 0;  // samples with a zero right-hand side
  double max1 = 0.0, median1 = 0.0, max2 = 0.0, median2 = 0.0;
  double spread1() const { return median1 > 0.0 ? max1 / median1 : 0.0; }
  double spread2() const { return median2 > 0.0 ? max2 / median2 : 0.0; }
};

/// Ratios LHS / RHS over random smooth periodic triplets. Each field is a
/// mean of random sign and magnitude in [0.5, 1.5] plus a band-limited
/// fluctuation of unit rms with spectrum decaying like 1 / (1 + |m|^2).
/// Both ratios are invariant under rescaling of f, g, h.
LadyzhenskayaStats ladyzhenskaya_sample(const SpectralGrid& grid, int n_samples,
                                        std::uint64_t seed, bool h_z_independent = false);

/// Ratios for explicitly supplied triplets.
LadyzhenskayaStats ladyzhenskaya_stats(const std::vector<LadyzhenskayaTerms>& terms);

}  // namespace ppe::analysis

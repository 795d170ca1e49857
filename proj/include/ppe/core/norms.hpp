#pragma once

#include <array>

#include "ppe/core/field.hpp"

namespace ppe {

struct NormReport {
  double l2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double linf = 0.0;
  /// ||d_i f||_{L2} for i = 1, 2, 3.
  std::array<double, 3> grad{0.0, 0.0, 0.0};
};

NormReport norms(const Field& f);
NormReport norms(const Spectrum& s);

/// L2 inner product over the periodic box (Parseval on the half spectrum).
double inner(const Spectrum& lhs, const Spectrum& rhs);
double inner(const Field& lhs, const Field& rhs);

/// sum over modes of weight(k1,k2,k3) |f_k|^2 times the box volume.
template <class W>
double weighted_square(const Spectrum& s, W&& weight) {
  const auto& g = s.grid();
  const auto c = s.coeffs();
  double acc = 0.0;
  for_each_mode(g, [&](std::size_t idx, int, int, int i3, double k1, double k2, double k3) {
    acc += g.parseval_weight(i3) * weight(k1, k2, k3) * std::norm(c[idx]);
  });
  return acc * g.volume();
}

double l2_norm(const Field& f);

}  // namespace ppe

#include "ppe/analysis/ladyzhenskaya.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ppe/core/calculus.hpp"
#include "ppe/core/errors.hpp"
#include "ppe/core/fft.hpp"
#include "ppe/core/norms.hpp"

namespace ppe::analysis {
namespace {

struct Norms2 {
  double l2, grad_h;
};

Norms2 split(const Field& f) {
  const NormReport r = norms(f);
  return {r.l2, std::hypot(r.grad[0], r.grad[1])};
}

/// Integral over z at every (x1, x2), returned as a flat n1 x n2 array.
std::vector<double> column_integral(const Field& f) {
  const auto& g = f.grid();
  std::vector<double> out(static_cast<std::size_t>(g.n1()) * g.n2(), 0.0);
  const double dz = g.spacing(2);
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      double acc = 0.0;
      for (int i3 = 0; i3 < g.n3(); ++i3) acc += f(i1, i2, i3);
      out[static_cast<std::size_t>(i1) * g.n2() + i2] = acc * dz;
    }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  const double hi = v[m];
  if (v.size() % 2) return hi;
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + m));
}

Field random_smooth(const SpectralGrid& g, std::mt19937_64& rng, bool z_independent) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> band(1, std::min(4, g.dealias_cutoff(0)));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int limit = band(rng);
  // mean of random sign with magnitude in [0.5, 1.5], fluctuation of unit rms
  const double offset = (unit(rng) < 0.0 ? -1.0 : 1.0) * (1.0 + 0.5 * unit(rng));
  std::vector<double> noise(g.size());
  for (double& v : noise) v = normal(rng);
  Spectrum s = fft_forward(Field(g, std::move(noise), Parity::none));
  auto c = s.coeffs();
  for_each_mode(g, [&](std::size_t idx, int i1, int i2, int i3, double, double, double) {
    const int m1 = g.signed_mode(0, i1), m2 = g.signed_mode(1, i2);
    if (std::abs(m1) > limit || std::abs(m2) > limit || i3 > limit || (z_independent && i3 > 0)) {
      c[idx] = 0.0;
    } else {
      c[idx] /= 1.0 + m1 * m1 + m2 * m2 + i3 * i3;
    }
  });
  s(0, 0, 0) = 0.0;
  Field f = fft_inverse(s);
  const double rms = l2_norm(f) / std::sqrt(g.volume());
  if (rms > 0.0) f *= 1.0 / rms;
  for (double& v : f.values()) v += offset;
  return f;
}

}  // namespace

LadyzhenskayaTerms ladyzhenskaya_terms(const Field& f, const Field& g, const Field& h) {
  if (!(f.grid() == g.grid()) || !(f.grid() == h.grid())) {
    throw ConfigError("ladyzhenskaya_terms: grid mismatch");
  }
  const auto& grid = f.grid();
  const std::vector<double> F = column_integral(f);
  const std::vector<double> GH = column_integral(multiply(g, h));
  double lhs = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) lhs += F[i] * GH[i];
  lhs *= grid.spacing(0) * grid.spacing(1);

  const Norms2 nf = split(f), ng = split(g), nh = split(h);
  const double hf = std::sqrt(nh.l2) * (std::sqrt(nh.l2) + std::sqrt(nh.grad_h));
  LadyzhenskayaTerms t;
  t.lhs = std::abs(lhs);
  t.rhs1 = std::sqrt(nf.l2) * (std::sqrt(nf.l2) + std::sqrt(nf.grad_h)) * ng.l2 * hf;
  t.rhs2 = nf.l2 * std::sqrt(ng.l2) * (std::sqrt(ng.l2) + std::sqrt(ng.grad_h)) * hf;
  return t;
}

LadyzhenskayaStats ladyzhenskaya_stats(const std::vector<LadyzhenskayaTerms>& terms) {
  LadyzhenskayaStats st;
  for (const auto& t : terms) {
    if (!(t.rhs1 > 0.0) || !(t.rhs2 > 0.0)) {
      ++st.skipped;
      continue;
    }
    st.ratio1.push_back(t.lhs / t.rhs1);
    st.ratio2.push_back(t.lhs / t.rhs2);
  }
  if (!st.ratio1.empty()) {
    st.max1 = *std::max_element(st.ratio1.begin(), st.ratio1.end());
    st.max2 = *std::max_element(st.ratio2.begin(), st.ratio2.end());
    st.median1 = median(st.ratio1);
    st.median2 = median(st.ratio2);
  }
  return st;
}

LadyzhenskayaStats ladyzhenskaya_sample(const SpectralGrid& grid, int n_samples,
                                        std::uint64_t seed, bool h_z_independent) {
  std::mt19937_64 rng(seed);
  std::vector<LadyzhenskayaTerms> terms;
  terms.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const Field f = random_smooth(grid, rng, false);
    const Field g = random_smooth(grid, rng, false);
    const Field h = random_smooth(grid, rng, h_z_independent);
    terms.push_back(ladyzhenskaya_terms(f, g, h));
  }
  return ladyzhenskaya_stats(terms);
}

}  // namespace ppe::analysis

#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "ppe/core/grid.hpp"

namespace ppe {

/// Declared symmetry under the reflection x3 -> -x3.
enum class Parity { even, odd, none };

/// Parity of the z-derivative of a field with parity `p`.
Parity flip(Parity p);

/// Parity of a pointwise product.
Parity product(Parity lhs, Parity rhs);

std::string_view to_string(Parity p);
Parity parity_from_string(std::string_view s);

/// One scalar field sampled on a SpectralGrid.
class Field {
 public:
  explicit Field(const SpectralGrid& grid, Parity parity = Parity::none);
  Field(const SpectralGrid& grid, std::vector<double> values, Parity parity);

  template <class F>
  static Field from_function(const SpectralGrid& grid, F&& f, Parity parity = Parity::none) {
    Field out(grid, parity);
    for (int i1 = 0; i1 < grid.n1(); ++i1) {
      const double x1 = grid.coord(0, i1);
      for (int i2 = 0; i2 < grid.n2(); ++i2) {
        const double x2 = grid.coord(1, i2);
        for (int i3 = 0; i3 < grid.n3(); ++i3) {
          out.values_[grid.index(i1, i2, i3)] = f(x1, x2, grid.coord(2, i3));
        }
      }
    }
    return out;
  }

  const SpectralGrid& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  Field with_parity(Parity p) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator()(int i1, int i2, int i3) const { return values_[grid_.index(i1, i2, i3)]; }
  double& operator()(int i1, int i2, int i3) { return values_[grid_.index(i1, i2, i3)]; }

  Field& operator+=(const Field& rhs);
  Field& operator-=(const Field& rhs);
  Field& operator*=(double s);

  double max_abs() const;
  double mean() const;
  bool all_finite() const;

 private:
  SpectralGrid grid_;
  std::vector<double> values_;
  Parity parity_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double s, Field f);

/// Pointwise product; the declared parity follows the product rule.
Field multiply(const Field& lhs, const Field& rhs);

/// Half-spectrum Fourier coefficients, normalised so that the inverse
/// transform is a plain sum over modes.
class Spectrum {
 public:
  explicit Spectrum(const SpectralGrid& grid, Parity parity = Parity::none);

  const SpectralGrid& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  void set_parity(Parity p) { parity_ = p; }

  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::span<std::complex<double>> coeffs() { return coeffs_; }

  std::complex<double> operator()(int i1, int i2, int i3) const {
    return coeffs_[grid_.spectral_index(i1, i2, i3)];
  }
  std::complex<double>& operator()(int i1, int i2, int i3) {
    return coeffs_[grid_.spectral_index(i1, i2, i3)];
  }

  Spectrum& operator+=(const Spectrum& rhs);
  Spectrum& operator-=(const Spectrum& rhs);
  Spectrum& operator*=(double s);

 private:
  SpectralGrid grid_;
  std::vector<std::complex<double>> coeffs_;
  Parity parity_;
};

/// Visit every stored mode with its indices and wavenumbers.
template <class F>
void for_each_mode(const SpectralGrid& grid, F&& f) {
  const int nh = grid.n3_half();
  for (int i1 = 0; i1 < grid.n1(); ++i1) {
    const double k1 = grid.wavenumber(0, i1);
    for (int i2 = 0; i2 < grid.n2(); ++i2) {
      const double k2 = grid.wavenumber(1, i2);
      for (int i3 = 0; i3 < nh; ++i3) {
        f(grid.spectral_index(i1, i2, i3), i1, i2, i3, k1, k2, grid.wavenumber(2, i3));
      }
    }
  }
}

}  // namespace ppe

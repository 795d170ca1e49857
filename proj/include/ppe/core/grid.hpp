#pragma once

#include <cstddef>

namespace ppe {

/// Uniform periodic grid on (0,1) x (0,1) x (-a,a).
///
/// Real-space storage is row-major with x3 fastest, then x2, then x1. The
/// spectral layout is the real-to-complex half spectrum n1 x n2 x (n3/2+1).
class SpectralGrid {
 public:
  SpectralGrid(int n1, int n2, int n3, double a);

  int n(int axis) const { return dims_[axis]; }
  int n1() const { return dims_[0]; }
  int n2() const { return dims_[1]; }
  int n3() const { return dims_[2]; }
  int n3_half() const { return dims_[2] / 2 + 1; }
  double a() const { return a_; }

  std::size_t size() const {
    return static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  }
  std::size_t spectral_size() const {
    return static_cast<std::size_t>(dims_[0]) * dims_[1] * n3_half();
  }

  double length(int axis) const { return axis == 2 ? 2.0 * a_ : 1.0; }
  double spacing(int axis) const { return length(axis) / dims_[axis]; }
  double volume() const { return 2.0 * a_; }
  double cell_volume() const { return volume() / static_cast<double>(size()); }

  /// Physical coordinate of grid index `idx` along `axis` (x3 starts at -a).
  double coord(int axis, int idx) const {
    return (axis == 2 ? -a_ : 0.0) + idx * spacing(axis);
  }

  /// Signed alias of index `idx` in [-n/2, n/2).
  int signed_mode(int axis, int idx) const {
    const int n = dims_[axis];
    return idx < n / 2 ? idx : idx - n;
  }

  double wavenumber(int axis, int idx) const;

  /// Wavenumber used for odd-order derivatives: the Nyquist mode maps to 0.
  double derivative_wavenumber(int axis, int idx) const {
    return 2 * idx == dims_[axis] ? 0.0 : wavenumber(axis, idx);
  }

  bool is_nyquist(int axis, int idx) const { return 2 * idx == dims_[axis]; }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * dims_[1] + i2) * dims_[2] + i3;
  }
  std::size_t spectral_index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * dims_[1] + i2) * n3_half() + i3;
  }

  /// Index of -x3 for the node at index i3.
  int reflect_z(int i3) const { return (dims_[2] - i3) % dims_[2]; }

  /// Largest retained |m| on `axis` under the 2/3 rule (|m| < n/3, so that
  /// aliases of quadratic products never land on a retained mode).
  int dealias_cutoff(int axis) const { return (dims_[axis] - 1) / 3; }

  /// Half-spectrum multiplicity of plane i3 in Parseval sums.
  double parseval_weight(int i3) const {
    return (i3 == 0 || 2 * i3 == dims_[2]) ? 1.0 : 2.0;
  }

  bool operator==(const SpectralGrid& other) const = default;

 private:
  int dims_[3];
  double a_;
};

}  // namespace ppe

#include "ppe/core/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppe/core/errors.hpp"

namespace ppe {

Parity flip(Parity p) {
  switch (p) {
    case Parity::even:
      return Parity::odd;
    case Parity::odd:
      return Parity::even;
    default:
      return Parity::none;
  }
}

Parity product(Parity lhs, Parity rhs) {
  if (lhs == Parity::none || rhs == Parity::none) return Parity::none;
  return lhs == rhs ? Parity::even : Parity::odd;
}

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    default:
      return "none";
  }
}

Parity parity_from_string(std::string_view s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  if (s == "none") return Parity::none;
  throw ConfigError("unknown parity '" + std::string(s) + "'");
}

namespace {

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
  if (!(a == b)) throw ConfigError("field grids do not match");
}

}  // namespace

Field::Field(const SpectralGrid& grid, Parity parity)
    : grid_(grid), values_(grid.size(), 0.0), parity_(parity) {}

Field::Field(const SpectralGrid& grid, std::vector<double> values, Parity parity)
    : grid_(grid), values_(std::move(values)), parity_(parity) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("field has " + std::to_string(values_.size()) + " values, grid expects " +
                      std::to_string(grid_.size()));
  }
}

Field Field::with_parity(Parity p) const {
  Field out = *this;
  out.parity_ = p;
  return out;
}

Field& Field::operator+=(const Field& rhs) {
  require_same_grid(grid_, rhs.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  if (parity_ != rhs.parity_) parity_ = Parity::none;
  return *this;
}

Field& Field::operator-=(const Field& rhs) {
  require_same_grid(grid_, rhs.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  if (parity_ != rhs.parity_) parity_ = Parity::none;
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::mean() const {
  double acc = 0.0;
  for (double v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double s, Field f) { return f *= s; }

Field multiply(const Field& lhs, const Field& rhs) {
  require_same_grid(lhs.grid(), rhs.grid());
  Field out(lhs.grid(), product(lhs.parity(), rhs.parity()));
  auto o = out.values();
  auto l = lhs.values();
  auto r = rhs.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = l[i] * r[i];
  return out;
}

Spectrum::Spectrum(const SpectralGrid& grid, Parity parity)
    : grid_(grid), coeffs_(grid.spectral_size()), parity_(parity) {}

Spectrum& Spectrum::operator+=(const Spectrum& rhs) {
  require_same_grid(grid_, rhs.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  if (parity_ != rhs.parity_) parity_ = Parity::none;
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& rhs) {
  require_same_grid(grid_, rhs.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  if (parity_ != rhs.parity_) parity_ = Parity::none;
  return *this;
}

Spectrum& Spectrum::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

}  // namespace ppe

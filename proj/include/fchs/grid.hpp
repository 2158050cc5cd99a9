#pragma once

// Periodic-box discretization, fields, and real <-> spectral transforms.
//
// Transform normalization: F(k) = N^-dim * sum_x f(x) exp(-i k.x), so a pure
// cos(k.x) maps to two coefficients of modulus 1/2 and
//   sum_x |f(x)|^2 (L/N)^dim == L^dim * sum_k |F(k)|^2.
// Every spectral L2-type quadrature in this library carries the L^dim weight.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace fchs {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class GridSpec {
public:
  GridSpec(int dim, int points_per_axis, double box_length = kTwoPi);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return n_; }
  double box_length() const noexcept { return length_; }
  std::size_t modes() const noexcept { return modes_; }
  double spacing() const noexcept { return length_ / n_; }
  double fundamental() const noexcept { return kTwoPi / length_; }
  /// L^dim, the quadrature weight for spectral inner products.
  double volume() const noexcept;

  /// Integer lattice index of `flat` along `axis`, in [-N/2+1, N/2].
  int lattice(std::size_t flat, int axis) const noexcept;
  std::array<int, 3> lattice(std::size_t flat) const noexcept;
  std::size_t index_of(std::array<int, 3> lattice) const;
  /// Flat index of the mode -k.
  std::size_t negated(std::size_t flat) const noexcept;
  bool is_nyquist(std::size_t flat, int axis) const noexcept {
    return lattice(flat, axis) == n_ / 2;
  }

  /// Physical wavenumber components, one table per axis.
  std::span<const double> wavenumbers(int axis) const noexcept;
  /// |k|^2 per mode.
  std::span<const double> wavenumber_squared() const noexcept;
  /// i*k_axis derivative multiplier magnitudes (k with the Nyquist entry zeroed).
  std::span<const double> derivative_wavenumbers(int axis) const noexcept;

  /// Largest retained integer wavenumber per axis under the 2/3 rule.
  int dealias_cutoff() const noexcept { return n_ / 3; }

  /// Coordinate of grid point `i` along any axis, x_i = i * L / N.
  double coordinate(int i) const noexcept { return i * spacing(); }

  friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

private:
  struct Tables;

  int dim_;
  int n_;
  double length_;
  std::size_t modes_;
  std::shared_ptr<const Tables> tables_;
};

/// A field with `components` arrays of `grid.modes()` samples each.
template <typename T>
class Field {
public:
  Field() = default;
  Field(std::size_t components, std::size_t size)
      : data_(components, std::vector<T>(size, T{})) {}

  std::size_t components() const noexcept { return data_.size(); }
  std::size_t size() const noexcept { return data_.empty() ? 0 : data_.front().size(); }

  std::span<T> operator[](std::size_t c) noexcept { return data_[c]; }
  std::span<const T> operator[](std::size_t c) const noexcept { return data_[c]; }

  std::vector<T>& component(std::size_t c) noexcept { return data_[c]; }
  const std::vector<T>& component(std::size_t c) const noexcept { return data_[c]; }

  friend bool operator==(const Field& a, const Field& b) = default;

private:
  std::vector<std::vector<T>> data_;
};

using RealField = Field<double>;
using SpectralField = Field<Complex>;

RealField zero_real(const GridSpec& grid, std::size_t components);
SpectralField zero_spectral(const GridSpec& grid, std::size_t components);

/// Forward transform of every component.
SpectralField forward_transform(const RealField& f, const GridSpec& grid);

/// Inverse transform. Rejects input whose Hermitian defect exceeds 1e-10 of
/// its largest coefficient.
RealField inverse_transform(const SpectralField& F, const GridSpec& grid);

/// Inverse transform without the Hermitian check; for fields that are
/// Hermitian by construction (derivatives of masked fields, filter outputs).
RealField inverse_transform_trusted(const SpectralField& F, const GridSpec& grid);

/// Single-component transforms without the Hermitian check.
std::vector<Complex> forward_transform_component(std::span<const double> f, const GridSpec& grid);
std::vector<double> inverse_transform_component(std::span<const Complex> F, const GridSpec& grid);

/// max_k |F(k) - conj(F(-k))| / max_k |F(k)| over all components (0 for F = 0).
double hermitian_defect(const SpectralField& F, const GridSpec& grid);

/// 2/3-rule mask: true iff |k_j| <= floor(N/3) on every axis.
std::vector<bool> dealias_mask(const GridSpec& grid);

/// Zero every mode outside the 2/3-rule band, in place.
void apply_dealias(SpectralField& F, const GridSpec& grid);

/// Spectral partial derivative d/dx_axis of one component.
std::vector<Complex> differentiate(std::span<const Complex> F, const GridSpec& grid, int axis);

/// Enforce F(-k) = conj(F(k)) by averaging each mode pair.
void symmetrize_hermitian(SpectralField& F, const GridSpec& grid);

void check_same_shape(const SpectralField& a, const SpectralField& b, const char* where);

}  // namespace fchs

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nsdecay/grid.hpp"

namespace nsdecay {

using Complex = std::complex<double>;

/// Vector field stored as Fourier-series coefficients on the full lattice,
/// one n-vector per wavenumber, component-major. Coefficients are
/// c_k = |box|^-1 \int u(x) e^{-ik.x} dx, so u(x) = sum_k c_k e^{ik.x}.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid);
  /// Throws StructuralError unless coefficients.size() == n * N^n.
  SpectralField(const GridSpec& grid, std::vector<Complex> coefficients);

  const GridSpec& grid() const noexcept { return grid_; }
  int components() const noexcept { return grid_.dimension; }
  std::size_t modes() const noexcept { return modes_; }

  std::span<Complex> component(int i) noexcept {
    return {data_.data() + static_cast<std::size_t>(i) * modes_, modes_};
  }
  std::span<const Complex> component(int i) const noexcept {
    return {data_.data() + static_cast<std::size_t>(i) * modes_, modes_};
  }

  Complex& at(int comp, std::size_t flat) noexcept { return data_[comp * modes_ + flat]; }
  const Complex& at(int comp, std::size_t flat) const noexcept { return data_[comp * modes_ + flat]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  /// Largest coefficient modulus over all components and modes.
  double max_abs() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s) noexcept;

 private:
  GridSpec grid_{};
  std::size_t modes_ = 0;
  std::vector<Complex> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Real vector field sampled at x_j = j L / N on every axis, component-major.
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(const GridSpec& grid);
  /// Throws StructuralError unless values.size() == n * N^n.
  PhysicalField(const GridSpec& grid, std::vector<double> values);

  const GridSpec& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::size_t points() const noexcept { return points_; }

  std::span<double> component(int i) noexcept {
    return {values_.data() + static_cast<std::size_t>(i) * points_, points_};
  }
  std::span<const double> component(int i) const noexcept {
    return {values_.data() + static_cast<std::size_t>(i) * points_, points_};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Riemann-sum L2 norm over the box (sum of squares times cell volume).
  double l2_norm() const noexcept;

  /// Largest pointwise Euclidean magnitude |u(x)|.
  double max_magnitude() const noexcept;

 private:
  GridSpec grid_{};
  int components_ = 0;
  std::size_t points_ = 0;
  std::vector<double> values_;
};

}  // namespace nsdecay

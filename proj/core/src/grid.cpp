#include "nsdecay/grid.hpp"

#include <cmath>
#include <string>

#include "nsdecay/errors.hpp"
#include "nsdecay/field.hpp"

namespace nsdecay {

void GridSpec::validate() const {
  if (dimension != 2 && dimension != 3) {
    throw ConfigError("grid dimension must be 2 or 3, got " + std::to_string(dimension));
  }
  if (resolution < 8 || resolution % 2 != 0) {
    throw ConfigError("grid resolution must be even and >= 8, got " + std::to_string(resolution));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ConfigError("box length must be positive");
  }
  if (!(viscosity > 0.0) || !std::isfinite(viscosity)) {
    throw ConfigError("viscosity must be positive");
  }
}

std::size_t GridSpec::points() const noexcept {
  std::size_t p = 1;
  for (int i = 0; i < dimension; ++i) p *= static_cast<std::size_t>(resolution);
  return p;
}

double GridSpec::cell_volume() const noexcept { return std::pow(spacing(), dimension); }

double GridSpec::box_volume() const noexcept { return std::pow(box_length, dimension); }

std::size_t flat_index(const GridSpec& grid, const LatticeVector& z) noexcept {
  const auto N = static_cast<std::size_t>(grid.resolution);
  std::size_t flat = 0;
  for (int d = 0; d < grid.dimension; ++d) {
    flat = flat * N + static_cast<std::size_t>(grid.fft_index(z[d]));
  }
  return flat;
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(const GridSpec& grid)
    : grid_(grid), modes_(grid.points()), data_(modes_ * grid.dimension) {}

SpectralField::SpectralField(const GridSpec& grid, std::vector<Complex> coefficients)
    : grid_(grid), modes_(grid.points()), data_(std::move(coefficients)) {
  if (data_.size() != modes_ * grid.dimension) {
    throw StructuralError("spectral coefficient count " + std::to_string(data_.size()) +
                          " does not match grid (" + std::to_string(modes_ * grid.dimension) + ")");
  }
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

namespace {
void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw StructuralError("field grids differ");
}
}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) noexcept {
  for (auto& c : data_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

// ---------------------------------------------------------------------------

PhysicalField::PhysicalField(const GridSpec& grid)
    : grid_(grid),
      components_(grid.dimension),
      points_(grid.points()),
      values_(points_ * grid.dimension) {}

PhysicalField::PhysicalField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), components_(grid.dimension), points_(grid.points()), values_(std::move(values)) {
  if (values_.size() != points_ * grid.dimension) {
    throw StructuralError("physical value count " + std::to_string(values_.size()) +
                          " does not match grid (" + std::to_string(points_ * grid.dimension) + ")");
  }
}

double PhysicalField::l2_norm() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s * grid_.cell_volume());
}

double PhysicalField::max_magnitude() const noexcept {
  double best = 0.0;
  for (std::size_t p = 0; p < points_; ++p) {
    double m2 = 0.0;
    for (int c = 0; c < components_; ++c) {
      const double v = values_[c * points_ + p];
      m2 += v * v;
    }
    best = std::max(best, m2);
  }
  return std::sqrt(best);
}

}  // namespace nsdecay

#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace nsdecay {

/// Periodic box [0, L]^n sampled with N points per axis, plus the fluid
/// viscosity. Wavenumbers are k = (2 pi / L) z with z_i in [-N/2, N/2).
struct GridSpec {
  int dimension = 2;
  double box_length = 2.0 * std::numbers::pi;
  int resolution = 64;
  double viscosity = 0.1;

  /// Throws ConfigError unless n in {2,3}, N even and >= 8, L > 0, nu > 0.
  void validate() const;

  std::size_t points() const noexcept;
  double wavenumber_unit() const noexcept { return 2.0 * std::numbers::pi / box_length; }
  double spacing() const noexcept { return box_length / resolution; }
  double cell_volume() const noexcept;
  double box_volume() const noexcept;

  /// Largest |z_i| kept by the 2/3 rule; products of modes with
  /// |z_i| <= K cannot alias back onto them when 3K < N.
  int dealias_cutoff() const noexcept { return (resolution - 1) / 3; }

  /// Signed lattice coordinate of FFT index i along one axis.
  int lattice_coordinate(int i) const noexcept { return i < resolution / 2 ? i : i - resolution; }

  /// FFT index of lattice coordinate z (inverse of lattice_coordinate).
  int fft_index(int z) const noexcept { return z >= 0 ? z : z + resolution; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Integer lattice vector; unused trailing entries are zero.
using LatticeVector = std::array<int, 3>;

/// Visit every mode of the grid in flat (row-major, last axis fastest)
/// order as fn(flat_index, lattice_vector).
template <typename Fn>
void for_each_mode(const GridSpec& grid, Fn&& fn) {
  const int N = grid.resolution;
  std::size_t flat = 0;
  if (grid.dimension == 2) {
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j, ++flat) {
        fn(flat, LatticeVector{grid.lattice_coordinate(i), grid.lattice_coordinate(j), 0});
      }
    }
  } else {
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        for (int l = 0; l < N; ++l, ++flat) {
          fn(flat, LatticeVector{grid.lattice_coordinate(i), grid.lattice_coordinate(j),
                                 grid.lattice_coordinate(l)});
        }
      }
    }
  }
}

/// Flat index of lattice vector z.
std::size_t flat_index(const GridSpec& grid, const LatticeVector& z) noexcept;

}  // namespace nsdecay

#include "nsdecay/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nsdecay/errors.hpp"
#include "nsdecay/spectral_ops.hpp"

namespace nsdecay {

SpectralField taylor_green(const GridSpec& grid, double amplitude) {
  grid.validate();
  if (grid.dimension != 2) throw ConfigError("Taylor-Green initial data requires n = 2");
  if (std::abs(grid.box_length - 2.0 * std::numbers::pi) > 1e-12) {
    throw ConfigError("Taylor-Green initial data requires L = 2 pi");
  }
  SpectralField u(grid);
  // cos x sin y has coefficient -i b / 4 at (a, b) = (+-1, +-1);
  // -sin x cos y has i a / 4.
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      const std::size_t flat = flat_index(grid, {a, b, 0});
      u.at(0, flat) = Complex(0.0, -0.25 * b * amplitude);
      u.at(1, flat) = Complex(0.0, 0.25 * a * amplitude);
    }
  }
  return u;
}

namespace {

// Bit-level uniform in [-1, 1) so the stream does not depend on the
// standard library's distribution implementations.
double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

bool positive_half(const LatticeVector& z) {
  for (int v : z) {
    if (v != 0) return v > 0;
  }
  return false;
}

}  // namespace

SpectralField random_solenoidal(const GridSpec& grid, const RandomFieldSpec& spec) {
  grid.validate();
  if (!(spec.shell_min >= 0.0) || !(spec.shell_max >= spec.shell_min)) {
    throw ConfigError("random field shells must satisfy 0 <= shell_min <= shell_max");
  }
  if (spec.shell_max > grid.dealias_cutoff()) {
    throw ConfigError("random field shell_max exceeds the dealiasing cutoff of the grid");
  }
  if (!(spec.l2_norm >= 0.0)) throw ConfigError("random field norm must be nonnegative");

  const int n = grid.dimension;
  const int reach = static_cast<int>(std::floor(spec.shell_max));
  std::mt19937_64 rng(spec.seed);
  SpectralField u(grid);

  // Walk a fixed lattice box so the draw order does not depend on N.
  LatticeVector z{0, 0, 0};
  const int zmax = n == 3 ? reach : 0;
  for (z[0] = -reach; z[0] <= reach; ++z[0]) {
    for (z[1] = -reach; z[1] <= reach; ++z[1]) {
      for (z[2] = -zmax; z[2] <= zmax; ++z[2]) {
        if (!positive_half(z)) continue;
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) r2 += static_cast<double>(z[d]) * z[d];
        const double r = std::sqrt(r2);
        if (r < spec.shell_min || r > spec.shell_max) continue;
        const std::size_t flat = flat_index(grid, z);
        LatticeVector mirror{-z[0], -z[1], -z[2]};
        const std::size_t partner = flat_index(grid, mirror);
        for (int c = 0; c < n; ++c) {
          const double re = uniform_pm1(rng);
          const double im = uniform_pm1(rng);
          u.at(c, flat) = Complex(re, im);
          u.at(c, partner) = Complex(re, -im);
        }
      }
    }
  }
  leray_project_in_place(u);
  const double norm = seminorm(u, 0);
  if (norm > 0.0) u *= spec.l2_norm / norm;
  return u;
}

}  // namespace nsdecay

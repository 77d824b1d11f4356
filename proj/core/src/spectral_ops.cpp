#include "nsdecay/spectral_ops.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "nsdecay/errors.hpp"

namespace nsdecay {

void leray_project_in_place(SpectralField& F) noexcept {
  const GridSpec& grid = F.grid();
  const int n = grid.dimension;
  const double unit = grid.wavenumber_unit();
  for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
    double k2 = 0.0;
    double k[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < n; ++d) {
      k[d] = unit * z[d];
      k2 += k[d] * k[d];
    }
    if (k2 == 0.0) return;
    Complex kdotu = 0.0;
    for (int d = 0; d < n; ++d) kdotu += k[d] * F.at(d, flat);
    const Complex s = kdotu / k2;
    for (int d = 0; d < n; ++d) F.at(d, flat) -= k[d] * s;
  });
}

SpectralField leray_project(const SpectralField& F) {
  SpectralField out = F;
  leray_project_in_place(out);
  return out;
}

std::vector<double> seminorms(const SpectralField& F, int m_max) {
  if (m_max < 0) throw DomainError("seminorm order must be nonnegative");
  const GridSpec& grid = F.grid();
  const int n = grid.dimension;
  const double unit = grid.wavenumber_unit();
  std::vector<double> sums(static_cast<std::size_t>(m_max) + 1, 0.0);
  for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
    double amp2 = 0.0;
    for (int d = 0; d < n; ++d) amp2 += std::norm(F.at(d, flat));
    if (amp2 == 0.0) return;
    double k2 = 0.0;
    for (int d = 0; d < n; ++d) k2 += (unit * z[d]) * (unit * z[d]);
    double weight = 1.0;
    for (int m = 0; m <= m_max; ++m) {
      sums[m] += weight * amp2;
      weight *= k2;
    }
  });
  const double volume = grid.box_volume();
  for (auto& s : sums) s = std::sqrt(volume * s);
  return sums;
}

double seminorm(const SpectralField& F, int m) { return seminorms(F, m).back(); }

double divergence_max(const SpectralField& F) noexcept {
  const GridSpec& grid = F.grid();
  const int n = grid.dimension;
  const double unit = grid.wavenumber_unit();
  double worst = 0.0;
  for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
    Complex div = 0.0;
    for (int d = 0; d < n; ++d) div += (unit * z[d]) * F.at(d, flat);
    worst = std::max(worst, std::abs(div));
  });
  return worst;
}

double hermitian_defect(const SpectralField& F) noexcept {
  const GridSpec& grid = F.grid();
  const int n = grid.dimension;
  const int half = grid.resolution / 2;
  double worst = 0.0;
  for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
    LatticeVector mirror{0, 0, 0};
    for (int d = 0; d < n; ++d) {
      if (z[d] == -half) return;
      mirror[d] = -z[d];
    }
    const std::size_t partner = flat_index(grid, mirror);
    for (int c = 0; c < n; ++c) {
      worst = std::max(worst, std::abs(F.at(c, partner) - std::conj(F.at(c, flat))));
    }
  });
  return worst;
}

void dealias_in_place(SpectralField& F) noexcept {
  const GridSpec& grid = F.grid();
  const int n = grid.dimension;
  const int cutoff = grid.dealias_cutoff();
  for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
    for (int d = 0; d < n; ++d) {
      if (std::abs(z[d]) > cutoff) {
        for (int c = 0; c < n; ++c) F.at(c, flat) = 0.0;
        return;
      }
    }
  });
}

SpectralField gradient_field(const GridSpec& grid, std::span<const Complex> potential) {
  if (potential.size() != grid.points()) {
    throw StructuralError("potential has " + std::to_string(potential.size()) +
                          " coefficients, grid has " + std::to_string(grid.points()));
  }
  SpectralField out(grid);
  const double unit = grid.wavenumber_unit();
  const Complex I(0.0, 1.0);
  for_each_mode(grid, [&](std::size_t flat, const LatticeVector& z) {
    for (int d = 0; d < grid.dimension; ++d) out.at(d, flat) = I * (unit * z[d]) * potential[flat];
  });
  return out;
}

}  // namespace nsdecay

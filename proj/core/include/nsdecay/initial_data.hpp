#pragma once

#include <cstdint>

#include "nsdecay/field.hpp"

namespace nsdecay {

/// amplitude * (cos x sin y, -sin x cos y) on [0, 2 pi]^2. Requires n = 2
/// and L = 2 pi (ConfigError otherwise).
SpectralField taylor_green(const GridSpec& grid, double amplitude);

/// Seeded random solenoidal field with spectrum on the shell
/// shell_min <= |z| <= shell_max, scaled to the requested L2 norm.
struct RandomFieldSpec {
  std::uint64_t seed = 1;
  double shell_min = 1.0;
  double shell_max = 4.0;
  double l2_norm = 1.0;
};

SpectralField random_solenoidal(const GridSpec& grid, const RandomFieldSpec& spec);

}  // namespace nsdecay

#pragma once

#include <filesystem>
#include <iosfwd>

#include "nsdecay/solver.hpp"

namespace nsdecay {

/// Binary snapshot layout (native little-endian):
///
///   offset  size  field
///        0     8  magic "NSDSNAP1"
///        8     4  int32 dimension n
///       12     4  int32 resolution N
///       16     8  float64 box length L
///       24     8  float64 viscosity
///       32     8  float64 time
///       40     8  uint64 coefficient count (n * N^n)
///       48   16*  complex128 coefficients (re, im), component-major,
///                 flat mode order as in for_each_mode
void write_snapshot(std::ostream& out, const StateSnapshot& snapshot);
StateSnapshot read_snapshot(std::istream& in);

void write_snapshot(const std::filesystem::path& path, const StateSnapshot& snapshot);
StateSnapshot read_snapshot(const std::filesystem::path& path);

}  // namespace nsdecay

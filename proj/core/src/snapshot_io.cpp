#include "nsdecay/snapshot_io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "nsdecay/errors.hpp"

namespace nsdecay {
namespace {

constexpr std::array<char, 8> kMagic = {'N', 'S', 'D', 'S', 'N', 'A', 'P', '1'};

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw StructuralError("snapshot truncated");
  return v;
}

}  // namespace

void write_snapshot(std::ostream& out, const StateSnapshot& snapshot) {
  const GridSpec& grid = snapshot.field.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::int32_t>(out, grid.dimension);
  put<std::int32_t>(out, grid.resolution);
  put<double>(out, grid.box_length);
  put<double>(out, grid.viscosity);
  put<double>(out, snapshot.time);
  const auto data = snapshot.field.data();
  put<std::uint64_t>(out, data.size());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(Complex)));
  if (!out) throw std::runtime_error("failed writing snapshot");
}

StateSnapshot read_snapshot(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw StructuralError("not a snapshot file (bad magic)");
  GridSpec grid;
  grid.dimension = get<std::int32_t>(in);
  grid.resolution = get<std::int32_t>(in);
  grid.box_length = get<double>(in);
  grid.viscosity = get<double>(in);
  const double time = get<double>(in);
  const auto count = get<std::uint64_t>(in);
  try {
    grid.validate();
  } catch (const ConfigError& e) {
    throw StructuralError(std::string("snapshot header: ") + e.what());
  }
  if (count != grid.points() * static_cast<std::uint64_t>(grid.dimension)) {
    throw StructuralError("snapshot coefficient count does not match its header");
  }
  std::vector<Complex> coefficients(count);
  in.read(reinterpret_cast<char*>(coefficients.data()),
          static_cast<std::streamsize>(count * sizeof(Complex)));
  if (!in) throw StructuralError("snapshot truncated");
  return {time, SpectralField(grid, std::move(coefficients))};
}

void write_snapshot(const std::filesystem::path& path, const StateSnapshot& snapshot) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(out, snapshot);
}

StateSnapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_snapshot(in);
}

}  // namespace nsdecay

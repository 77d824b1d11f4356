#include "nsdecay/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "nsdecay/errors.hpp"

namespace nsdecay {
namespace {

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are created once per (n, N, sign) under a lock and kept for the
// lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dimension, int resolution, int sign) {
    const auto key = std::make_tuple(dimension, resolution, sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t size = 1;
    std::vector<int> dims(dimension, resolution);
    for (int d = 0; d < dimension; ++d) size *= static_cast<std::size_t>(resolution);
    fftw_complex* scratch = fftw_alloc_complex(size);
    fftw_plan plan = fftw_plan_dft(dimension, dims.data(), scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan for N=" + std::to_string(resolution));
    }
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const GridSpec& grid, std::span<Complex> values, int sign) {
  if (values.size() != grid.points()) {
    throw StructuralError("FFT input has " + std::to_string(values.size()) + " entries, grid has " +
                          std::to_string(grid.points()));
  }
  fftw_plan plan = PlanCache::instance().get(grid.dimension, grid.resolution, sign);
  auto* data = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(plan, data, data);
}

}  // namespace

void fft_forward_in_place(const GridSpec& grid, std::span<Complex> values) {
  execute(grid, values, FFTW_FORWARD);
}

void fft_backward_in_place(const GridSpec& grid, std::span<Complex> values) {
  execute(grid, values, FFTW_BACKWARD);
}

SpectralField forward_transform(const PhysicalField& f) {
  const GridSpec& grid = f.grid();
  if (f.components() != grid.dimension || f.points() != grid.points()) {
    throw StructuralError("physical field shape does not match its grid");
  }
  SpectralField out(grid);
  const double scale = 1.0 / static_cast<double>(grid.points());
  for (int c = 0; c < grid.dimension; ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t p = 0; p < src.size(); ++p) dst[p] = Complex(src[p], 0.0);
    fft_forward_in_place(grid, dst);
    for (auto& v : dst) v *= scale;
  }
  return out;
}

PhysicalField inverse_transform(const SpectralField& F) {
  const GridSpec& grid = F.grid();
  if (F.components() != grid.dimension || F.modes() != grid.points()) {
    throw StructuralError("spectral field shape does not match its grid");
  }
  PhysicalField out(grid);
  std::vector<Complex> work(grid.points());
  for (int c = 0; c < grid.dimension; ++c) {
    auto src = F.component(c);
    std::copy(src.begin(), src.end(), work.begin());
    fft_backward_in_place(grid, work);
    auto dst = out.component(c);
    for (std::size_t p = 0; p < work.size(); ++p) dst[p] = work[p].real();
  }
  return out;
}

}  // namespace nsdecay

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsdecay/grid.hpp"

namespace nsdecay {

/// Time series of seminorms (||u||, ||Du||, ..., ||D^M u||) at increasing
/// times. The grid is present for box simulations and absent for
/// whole-space oracle series.
struct NormSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> norms;
  std::optional<GridSpec> grid;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }

  /// Highest recorded order M, or -1 when empty.
  int max_order() const noexcept {
    return norms.empty() ? -1 : static_cast<int>(norms.front().size()) - 1;
  }

  double norm(std::size_t sample, int order) const { return norms.at(sample).at(order); }

  /// Append a sample; throws ConfigError if t does not increase or the row
  /// length differs from earlier rows.
  void append(double t, std::vector<double> row);

  /// Throws ConfigError on non-increasing times, ragged rows or negative
  /// entries.
  void validate() const;
};

/// CSV with header `t,m0,m1,...,m{M}`; values printed in shortest
/// round-trip form so output is byte-stable.
void write_norms_csv(std::ostream& out, const NormSeries& series);
NormSeries read_norms_csv(std::istream& in);

/// Shortest decimal form of x that parses back to the same double.
std::string format_double(double x);

}  // namespace nsdecay

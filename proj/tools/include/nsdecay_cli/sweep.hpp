#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nsdecay_cli/config.hpp"
#include "nsdecay_cli/experiment.hpp"

namespace nsdecay::cli {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text) noexcept;

struct SweepChild {
  Mode mode = Mode::kHeatOracle;
  ParameterSet params;
  /// 16 hex digits of the FNV-1a hash of the canonical key list.
  std::string hash;
  /// "key=value;..." for the swept keys only.
  std::string label;
};

/// Cartesian expansion of a [sweep] section. `mode` names the child mode,
/// `jobs` the concurrency; every other value is a comma list. An empty list
/// yields no children. Identical expansions are kept once.
std::vector<SweepChild> expand_sweep(const ConfigDocument& doc, const std::vector<ConfigEntry>& overrides);

struct SweepRow {
  std::string hash;
  std::string label;
  /// passed, failed, invalid or blow-up.
  std::string status;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;
  std::string message;
};

struct SweepReport {
  /// Sorted by hash.
  std::vector<SweepRow> rows;
  bool passed() const noexcept;
};

/// Runs children concurrently (at most `jobs` at once), each into
/// output_dir/<hash>, and writes output_dir/sweep.csv and report.txt.
SweepReport run_sweep(const std::vector<SweepChild>& children, const std::filesystem::path& output_dir,
                      unsigned jobs);

int sweep_jobs(const ConfigDocument& doc);

}  // namespace nsdecay::cli

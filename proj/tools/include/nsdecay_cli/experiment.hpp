#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nsdecay_cli/config.hpp"

namespace nsdecay::cli {

enum class Mode { kConstant, kHeatOracle, kSimulate, kVerifyChain, kSweep };

const char* to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(const std::string& name);

struct KeyInfo {
  std::string name;
  std::string help;
};

/// Keys accepted by a mode, common keys (seed, output_dir) included.
const std::vector<KeyInfo>& mode_keys(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::kConstant;
  ParameterSet params;
};

/// Merge global keys, the single section for `mode` (if a document is
/// given) and command-line overrides, then reject unknown keys. A document
/// must hold exactly one section and it must be named after the mode.
ExperimentConfig make_experiment(Mode mode, const ConfigDocument* doc,
                                 const std::vector<ConfigEntry>& overrides);

struct CheckRow {
  std::string check;
  int k = 0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct RunReport {
  Mode mode = Mode::kConstant;
  std::string version;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> config_echo;
  std::vector<CheckRow> checks;
  std::vector<std::string> notes;
  /// Short human-readable result printed to stdout.
  std::string summary;

  std::size_t failures() const noexcept;
  bool passed() const noexcept { return failures() == 0; }
  /// Smallest margin / |rhs| (plain margin when rhs = 0); 1 without checks.
  double worst_margin() const noexcept;
};

/// output_dir key, else $NSDECAY_OUTPUT_DIR, else ./nsdecay-out.
std::filesystem::path resolve_output_dir(const ParameterSet& params);

/// Run one non-sweep experiment and write its files (norms.csv,
/// margins.csv, report.txt, heat_oracle.csv where applicable) into
/// output_dir. Configuration errors propagate as ConfigError, solver
/// blow-up as BlowUpError.
RunReport run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir);

void write_margins_csv(const std::filesystem::path& path, const std::vector<CheckRow>& rows);
void write_report(const std::filesystem::path& path, const RunReport& report);

}  // namespace nsdecay::cli

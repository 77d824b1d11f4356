#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nsdecay::cli {

/// One `key = value` line. line == 0 marks a command-line override.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;
};

/// Flat sectioned text: `[mode]` headers, `key = value` lines, `#` or `;`
/// comments. Keys before the first header are global.
struct ConfigDocument {
  std::string source = "<input>";
  std::vector<ConfigEntry> globals;
  std::vector<ConfigSection> sections;
};

/// Throws nsdecay::ConfigError with "source:line: message" on syntax errors
/// and duplicate keys within a section.
ConfigDocument parse_config(std::istream& in, const std::string& source);
ConfigDocument load_config(const std::filesystem::path& path);

/// Keyed view over entries with typed, origin-tagged accessors. Every
/// conversion error names the file line (or flag) the value came from.
class ParameterSet {
 public:
  ParameterSet() = default;
  explicit ParameterSet(std::string source) : source_(std::move(source)) {}

  void set(const ConfigEntry& entry);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, ConfigEntry>& entries() const noexcept { return values_; }
  const std::string& source() const noexcept { return source_; }

  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  /// Number, or nullopt for the literal "auto" (also the fallback when unset).
  std::optional<double> real_or_auto(const std::string& key) const;

  /// "source:line: key 'k': message" or "--k: message".
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  /// Throws for the first key not in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

 private:
  std::string source_ = "<input>";
  std::map<std::string, ConfigEntry> values_;
};

/// Comma-separated list items, trimmed. An all-blank value yields no items.
std::vector<std::string> split_list(const std::string& value);

}  // namespace nsdecay::cli

#include "nsdecay_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "nsdecay/errors.hpp"

namespace nsdecay::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

[[noreturn]] void syntax_error(const std::string& source, int line, const std::string& msg) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

ConfigDocument parse_config(std::istream& in, const std::string& source) {
  ConfigDocument doc;
  doc.source = source;
  std::string raw;
  int line = 0;
  std::set<std::string> seen_globals;
  std::set<std::string> seen_in_section;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;

    if (text.front() == '[') {
      if (text.back() != ']') syntax_error(source, line, "unterminated section header");
      const std::string name = trim(text.substr(1, text.size() - 2));
      if (!valid_key(name)) syntax_error(source, line, "invalid section name '" + name + "'");
      doc.sections.push_back({name, line, {}});
      seen_in_section.clear();
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos) syntax_error(source, line, "expected 'key = value', got '" + text + "'");
    ConfigEntry entry{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (!valid_key(entry.key)) syntax_error(source, line, "invalid key '" + entry.key + "'");
    // Inline comments after the value.
    for (const char mark : {'#', ';'}) {
      const auto pos = entry.value.find(mark);
      if (pos != std::string::npos) entry.value = trim(entry.value.substr(0, pos));
    }

    auto& seen = doc.sections.empty() ? seen_globals : seen_in_section;
    if (!seen.insert(entry.key).second) syntax_error(source, line, "duplicate key '" + entry.key + "'");
    if (doc.sections.empty()) {
      doc.globals.push_back(std::move(entry));
    } else {
      doc.sections.back().entries.push_back(std::move(entry));
    }
  }
  return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

void ParameterSet::set(const ConfigEntry& entry) { values_[entry.key] = entry; }

void ParameterSet::fail(const std::string& key, const std::string& message) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(source_ + ": key '" + key + "': " + message);
  if (it->second.line == 0) throw ConfigError("--" + key + ": " + message);
  throw ConfigError(source_ + ":" + std::to_string(it->second.line) + ": key '" + key + "': " + message);
}

void ParameterSet::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, entry] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(key, "unknown key");
  }
}

std::string ParameterSet::text(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.value;
}

double ParameterSet::real(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail(key, "expected a finite number, got '" + v + "'");
  }
  return out;
}

int ParameterSet::integer(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second.value;
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(key, "expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t ParameterSet::unsigned64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second.value;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(key, "expected an unsigned 64-bit integer, got '" + v + "'");
  }
  return out;
}

bool ParameterSet::boolean(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second.value;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(key, "expected true or false, got '" + v + "'");
}

std::optional<double> ParameterSet::real_or_auto(const std::string& key) const {
  if (!has(key) || text(key, "") == "auto") return std::nullopt;
  return real(key, 0.0);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  if (trim(value).empty()) return items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

}  // namespace nsdecay::cli

#include "nsdecay/norm_series.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "nsdecay/errors.hpp"

namespace nsdecay {

void NormSeries::append(double t, std::vector<double> row) {
  if (!times.empty() && !(t > times.back())) {
    throw ConfigError("norm series times must be strictly increasing");
  }
  if (!norms.empty() && row.size() != norms.front().size()) {
    throw ConfigError("norm series rows must all have the same length");
  }
  times.push_back(t);
  norms.push_back(std::move(row));
}

void NormSeries::validate() const {
  if (times.size() != norms.size()) throw ConfigError("norm series times/rows size mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ConfigError("norm series times must be strictly increasing");
    }
    if (norms[i].size() != norms.front().size()) throw ConfigError("ragged norm series");
    for (double v : norms[i]) {
      if (!(v >= 0.0)) throw ConfigError("norm series entries must be nonnegative");
    }
  }
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

void write_norms_csv(std::ostream& out, const NormSeries& series) {
  out << 't';
  for (int m = 0; m <= series.max_order(); ++m) out << ",m" << m;
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.times[i]);
    for (double v : series.norms[i]) out << ',' << format_double(v);
    out << '\n';
  }
}

namespace {

double parse_number(const std::string& cell, int line) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("norms.csv line " + std::to_string(line) + ": not a number: '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

NormSeries read_norms_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("norms.csv: empty input");
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "t") throw ConfigError("norms.csv line 1: bad header");
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c] != "m" + std::to_string(c - 1)) {
      throw ConfigError("norms.csv line 1: expected column m" + std::to_string(c - 1));
    }
  }
  NormSeries series;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ConfigError("norms.csv line " + std::to_string(lineno) + ": wrong column count");
    }
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_number(cells[c], lineno));
    try {
      series.append(parse_number(cells[0], lineno), std::move(row));
    } catch (const ConfigError& e) {
      throw ConfigError("norms.csv line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  series.validate();
  return series;
}

}  // namespace nsdecay

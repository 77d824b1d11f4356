#include "nsdecay_cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>

#include "nsdecay/errors.hpp"
#include "nsdecay/norm_series.hpp"

namespace nsdecay::cli {
namespace {

const ConfigSection& sweep_section(const ConfigDocument& doc) {
  if (doc.sections.size() != 1 || doc.sections.front().name != "sweep") {
    throw ConfigError(doc.source + ": a sweep file holds exactly one [sweep] section");
  }
  return doc.sections.front();
}

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SweepRow run_child(const SweepChild& child, const std::filesystem::path& output_dir) {
  SweepRow row;
  row.hash = child.hash;
  row.label = child.label;
  try {
    ExperimentConfig cfg{child.mode, child.params};
    cfg.params.require_known([&] {
      std::vector<std::string> keys;
      for (const auto& k : mode_keys(child.mode)) keys.push_back(k.name);
      return keys;
    }());
    const RunReport report = run_experiment(cfg, output_dir / child.hash);
    row.status = report.passed() ? "passed" : "failed";
    row.checks = report.checks.size();
    row.failures = report.failures();
    row.worst_margin = report.worst_margin();
  } catch (const ConfigError& e) {
    row.status = "invalid";
    row.message = e.what();
  } catch (const BlowUpError& e) {
    row.status = "blow-up";
    row.message = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int sweep_jobs(const ConfigDocument& doc) {
  const ConfigSection& section = sweep_section(doc);
  ParameterSet p(doc.source);
  for (const auto& e : section.entries) p.set(e);
  const int jobs = p.integer("jobs", static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  if (jobs < 1) p.fail("jobs", "must be >= 1");
  return jobs;
}

std::vector<SweepChild> expand_sweep(const ConfigDocument& doc, const std::vector<ConfigEntry>& overrides) {
  const ConfigSection& section = sweep_section(doc);
  ParameterSet head(doc.source);
  std::vector<ConfigEntry> swept;
  for (const auto& e : section.entries) {
    if (e.key == "mode" || e.key == "jobs") {
      head.set(e);
    } else {
      swept.push_back(e);
    }
  }
  if (!head.has("mode")) {
    throw ConfigError(doc.source + ":" + std::to_string(section.line) + ": [sweep] needs a 'mode' key");
  }
  const std::string mode_name = head.text("mode", "");
  const auto mode = parse_mode(mode_name);
  if (!mode || *mode == Mode::kSweep || *mode == Mode::kConstant) {
    head.fail("mode", "expected heat-oracle, simulate or verify-chain, got '" + mode_name + "'");
  }

  std::vector<std::vector<std::string>> lists;
  for (const auto& e : swept) lists.push_back(split_list(e.value));

  std::vector<SweepChild> children;
  std::set<std::string> seen;
  if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); })) return children;

  std::vector<std::size_t> index(lists.size(), 0);
  while (true) {
    SweepChild child;
    child.mode = *mode;
    child.params = ParameterSet(doc.source);
    for (const auto& g : doc.globals) child.params.set(g);
    std::string label;
    for (std::size_t i = 0; i < swept.size(); ++i) {
      child.params.set({swept[i].key, lists[i][index[i]], swept[i].line});
      if (lists[i].size() > 1) label += (label.empty() ? "" : ";") + swept[i].key + "=" + lists[i][index[i]];
    }
    for (const auto& o : overrides) child.params.set(o);
    std::string canonical = mode_name + "\n";
    for (const auto& [key, e] : child.params.entries()) {
      if (key != "output_dir") canonical += key + "=" + e.value + "\n";
    }
    child.hash = hex16(fnv1a(canonical));
    child.label = label;
    if (seen.insert(child.hash).second) children.push_back(std::move(child));

    std::size_t d = 0;
    while (d < index.size() && ++index[d] == lists[d].size()) index[d++] = 0;
    if (d == index.size()) break;
  }
  return children;
}

bool SweepReport::passed() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "passed"; });
}

SweepReport run_sweep(const std::vector<SweepChild>& children, const std::filesystem::path& output_dir,
                      unsigned jobs) {
  std::filesystem::create_directories(output_dir);
  SweepReport report;
  report.rows.resize(children.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < children.size(); i = next++) report.rows[i] = run_child(children[i], output_dir);
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(children.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(report.rows.begin(), report.rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.hash < b.hash; });

  std::ofstream csv(output_dir / "sweep.csv");
  csv << "hash,label,status,checks,failures,worst_margin,message\n";
  for (const auto& r : report.rows) {
    csv << r.hash << ',' << csv_quote(r.label) << ',' << r.status << ',' << r.checks << ',' << r.failures << ','
        << format_double(r.worst_margin) << ',' << csv_quote(r.message) << '\n';
  }
  std::ofstream txt(output_dir / "report.txt");
  const auto passed = std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const SweepRow& r) { return r.status == "passed"; });
  txt << "sweep: " << report.rows.size() << " children, " << passed << " passed\n";
  for (const auto& r : report.rows) {
    txt << "  " << r.hash << "  " << r.status << "  " << (r.label.empty() ? "-" : r.label);
    if (!r.message.empty()) txt << "  " << r.message;
    txt << "\n";
  }
  txt << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report;
}

}  // namespace nsdecay::cli

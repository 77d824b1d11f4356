#include "nsdecay_cli/app.hpp"

#include <CLI11.hpp>
#include <map>
#include <optional>
#include <ostream>

#include "nsdecay/errors.hpp"
#include "nsdecay/norm_series.hpp"
#include "nsdecay_cli/experiment.hpp"
#include "nsdecay_cli/sweep.hpp"

namespace nsdecay::cli {
namespace {

struct Subcommand {
  Mode mode;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> values;
};

std::vector<ConfigEntry> overrides_of(const Subcommand& sub) {
  std::vector<ConfigEntry> out;
  for (const auto& [key, value] : sub.values) {
    if (sub.app->count("--" + key) > 0) out.push_back({key, value, 0});
  }
  return out;
}

int run_single(const Subcommand& sub, std::ostream& out) {
  std::optional<ConfigDocument> doc;
  if (!sub.config_path.empty()) doc = load_config(sub.config_path);
  const ExperimentConfig cfg = make_experiment(sub.mode, doc ? &*doc : nullptr, overrides_of(sub));
  const auto dir = resolve_output_dir(cfg.params);
  const RunReport report = run_experiment(cfg, dir);
  out << report.summary;
  if (sub.mode == Mode::kConstant) return 0;
  out << "result: " << (report.passed() ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, "
      << report.failures() << " failed, worst relative margin " << format_double(report.worst_margin())
      << ")\n";
  out << "outputs: " << dir.string() << "\n";
  return report.passed() ? 0 : 1;
}

int run_sweep_command(const Subcommand& sub, std::ostream& out) {
  const ConfigDocument doc = load_config(sub.config_path);
  std::vector<ConfigEntry> overrides = overrides_of(sub);
  int jobs = sweep_jobs(doc);
  std::filesystem::path dir;
  {
    ParameterSet p("<command line>");
    for (const auto& g : doc.globals) p.set(g);
    for (const auto& o : overrides) p.set(o);
    dir = resolve_output_dir(p);
    if (p.has("jobs")) jobs = p.integer("jobs", jobs);
  }
  std::erase_if(overrides, [](const ConfigEntry& e) { return e.key == "jobs" || e.key == "output_dir"; });
  const auto children = expand_sweep(doc, overrides);
  const SweepReport report = run_sweep(children, dir, static_cast<unsigned>(std::max(1, jobs)));
  for (const auto& r : report.rows) {
    out << r.hash << "  " << r.status << "  " << (r.label.empty() ? "-" : r.label);
    if (!r.message.empty()) out << "  " << r.message;
    out << "\n";
  }
  out << "sweep: " << report.rows.size() << " children, result " << (report.passed() ? "PASS" : "FAIL") << "\n";
  out << "outputs: " << dir.string() << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decay-rate experiments for the incompressible Navier-Stokes equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NSDECAY_VERSION);

  const std::vector<std::pair<Mode, std::string>> modes = {
      {Mode::kConstant, "Evaluate the decay constant K(alpha, m) and its minimizer"},
      {Mode::kHeatOracle, "Exact heat-flow norms, asymptotic limits and main-inequality margins"},
      {Mode::kSimulate, "Pseudo-spectral simulation in a periodic box"},
      {Mode::kVerifyChain, "Check the weighted-energy inequality chain on a norm series"},
      {Mode::kSweep, "Run a parameter grid of experiments concurrently"},
  };
  std::vector<Subcommand> subs;
  subs.reserve(modes.size());
  for (const auto& [mode, help] : modes) {
    Subcommand& sub = subs.emplace_back();
    sub.mode = mode;
    sub.app = app.add_subcommand(to_string(mode), help);
    auto* opt = sub.app->add_option("-c,--config", sub.config_path, "key = value config file");
    if (mode == Mode::kSweep) opt->required();
    const auto keys = mode == Mode::kSweep ? std::vector<KeyInfo>{{"jobs", "concurrent children"},
                                                                   {"output_dir", "directory for output files"}}
                                           : mode_keys(mode);
    for (const auto& key : keys) sub.app->add_option("--" + key.name, sub.values[key.name], key.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    for (const auto& sub : subs) {
      if (!sub.app->parsed()) continue;
      return sub.mode == Mode::kSweep ? run_sweep_command(sub, out) : run_single(sub, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BlowUpError& e) {
    err << "error: solver blew up at t = " << format_double(e.time_reached()) << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace nsdecay::cli

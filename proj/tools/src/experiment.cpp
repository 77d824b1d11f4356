#include "nsdecay_cli/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nsdecay/chain_verifier.hpp"
#include "nsdecay/decay_constants.hpp"
#include "nsdecay/errors.hpp"
#include "nsdecay/heat_oracle.hpp"
#include "nsdecay/initial_data.hpp"
#include "nsdecay/norm_series.hpp"
#include "nsdecay/snapshot_io.hpp"
#include "nsdecay/solver.hpp"
#include "nsdecay/spectral_ops.hpp"

#ifndef NSDECAY_VERSION
#define NSDECAY_VERSION "unknown"
#endif

namespace nsdecay::cli {
namespace {

const std::vector<KeyInfo> kCommonKeys = {
    {"seed", "random seed (64-bit)"},
    {"output_dir", "directory for output files"},
};

const std::vector<KeyInfo> kConstantKeys = {
    {"alpha", "decay exponent alpha >= 0"},
    {"m", "derivative order m >= 0"},
};

const std::vector<KeyInfo> kHeatKeys = {
    {"kappa", "profile exponent kappa >= 0"},
    {"n", "space dimension (2..4)"},
    {"amplitude", "profile amplitude A (heat) or Taylor-Green amplitude"},
    {"nu", "viscosity"},
    {"t_end", "last sample time"},
    {"fine_until", "end of the uniformly sampled interval"},
    {"samples_per_unit", "uniform samples per unit time"},
    {"growth", "ratio of the geometric sampling beyond fine_until"},
};

const std::vector<KeyInfo> kSimulateKeys = {
    {"preset", "initial data: taylor-green or random"},
    {"n", "space dimension (2 or 3)"},
    {"N", "grid points per axis (even)"},
    {"L", "box side length"},
    {"nu", "viscosity"},
    {"dt", "time step"},
    {"T", "horizon"},
    {"m_max", "highest recorded seminorm order"},
    {"record_stride", "record norms every this many steps"},
    {"amplitude", "Taylor-Green amplitude"},
    {"l2_norm", "L2 norm of random initial data"},
    {"shell_min", "smallest excited |z| of random data"},
    {"shell_max", "largest excited |z| of random data"},
    {"dealias", "apply the 2/3 rule"},
    {"cfl", "advective Courant limit"},
    {"snapshot_stride", "write a snapshot every this many steps (0 = never)"},
    {"energy_tol", "relative tolerance of the energy-balance residual"},
    {"divergence_tol", "tolerance of max |k . u_k|"},
};

const std::vector<KeyInfo> kChainKeys = {
    {"source", "norm series source: heat-oracle, simulate or file"},
    {"norms_file", "norms.csv to verify when source = file"},
    {"alpha", "decay exponent of the weighted chain"},
    {"delta", "weight offset delta > 0"},
    {"epsilon", "slack epsilon in (0, 2)"},
    {"t0", "chain start time or auto (absorption threshold)"},
    {"window_start", "lambda0 window start or auto (10x tail decay)"},
    {"window_end", "lambda0 window end (default: last sample)"},
    {"chain_k_max", "highest order k of the chain"},
};

std::vector<KeyInfo> merged(std::initializer_list<const std::vector<KeyInfo>*> lists) {
  std::vector<KeyInfo> out;
  for (const auto* list : lists) {
    for (const auto& key : *list) {
      const bool dup = std::any_of(out.begin(), out.end(), [&](const KeyInfo& k) { return k.name == key.name; });
      if (!dup) out.push_back(key);
    }
  }
  return out;
}

std::vector<std::string> names(const std::vector<KeyInfo>& keys) {
  std::vector<std::string> out;
  for (const auto& k : keys) out.push_back(k.name);
  return out;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

CheckRow row(std::string check, int k, double t, double lhs, double rhs) {
  return {std::move(check), k, t, lhs, rhs, rhs - lhs, lhs <= rhs};
}

void write_norms(const std::filesystem::path& dir, const NormSeries& series) {
  std::ofstream out(dir / "norms.csv");
  if (!out) throw std::runtime_error("cannot write " + (dir / "norms.csv").string());
  write_norms_csv(out, series);
}

// ---------------------------------------------------------------------------

void expect(const ParameterSet& p, const std::string& key, bool ok, const std::string& message) {
  if (!ok) p.fail(key, message);
}

RadialProfile heat_profile(const ParameterSet& p) {
  RadialProfile prof;
  prof.kappa = p.real("kappa", 0.0);
  prof.dimension = p.integer("n", 2);
  prof.amplitude = p.real("amplitude", 1.0);
  expect(p, "kappa", prof.kappa >= 0.0, "must be >= 0");
  expect(p, "n", prof.dimension >= 2 && prof.dimension <= 4, "must be 2, 3 or 4");
  expect(p, "amplitude", prof.amplitude > 0.0, "must be positive");
  return prof;
}

double positive(const ParameterSet& p, const std::string& key, double fallback) {
  const double v = p.real(key, fallback);
  if (!(v > 0.0)) p.fail(key, "must be positive");
  return v;
}

std::vector<double> heat_times(const ParameterSet& p) {
  const double t_end = positive(p, "t_end", 1e4);
  const double fine = positive(p, "fine_until", 20.0);
  const double spu = positive(p, "samples_per_unit", 200.0);
  const double growth = p.real("growth", 1.001);
  if (!(growth > 1.0)) p.fail("growth", "must exceed 1");
  return heat_sample_times(t_end, fine, spu, growth);
}

struct SimulationSetup {
  SpectralField u0;
  SolverConfig cfg;
  bool taylor_green = false;
};

SimulationSetup simulation_setup(const ParameterSet& p, int min_order) {
  GridSpec grid;
  grid.dimension = p.integer("n", 2);
  grid.resolution = p.integer("N", 64);
  grid.box_length = p.real("L", 2.0 * std::numbers::pi);
  grid.viscosity = p.real("nu", 0.1);
  expect(p, "n", grid.dimension == 2 || grid.dimension == 3, "must be 2 or 3");
  expect(p, "N", grid.resolution >= 8 && grid.resolution % 2 == 0, "must be even and >= 8");
  expect(p, "L", grid.box_length > 0.0, "must be positive");
  expect(p, "nu", grid.viscosity > 0.0, "must be positive");

  SimulationSetup s;
  s.cfg.dt = p.real("dt", 1e-3);
  s.cfg.horizon = p.real("T", 1.0);
  s.cfg.m_max = std::max(p.integer("m_max", 2), min_order);
  s.cfg.record_stride = p.integer("record_stride", 1);
  s.cfg.dealias = p.boolean("dealias", true);
  s.cfg.cfl_limit = p.real("cfl", 0.5);
  s.cfg.snapshot_stride = p.integer("snapshot_stride", 0);
  expect(p, "T", s.cfg.horizon > 0.0, "must be positive");
  expect(p, "dt", s.cfg.dt > 0.0 && s.cfg.dt < s.cfg.horizon, "must lie in (0, T)");
  expect(p, "m_max", s.cfg.m_max >= 1, "must be >= 1");
  expect(p, "record_stride", s.cfg.record_stride >= 1, "must be >= 1");
  expect(p, "cfl", s.cfg.cfl_limit > 0.0, "must be positive");
  expect(p, "snapshot_stride", s.cfg.snapshot_stride >= 0, "must be >= 0");

  const std::string preset = p.text("preset", "taylor-green");
  if (preset == "taylor-green") {
    expect(p, "preset", grid.dimension == 2 && std::abs(grid.box_length - 2.0 * std::numbers::pi) < 1e-12,
           "taylor-green needs n = 2 and L = 2 pi");
    s.u0 = taylor_green(grid, p.real("amplitude", 1.0));
    s.taylor_green = true;
  } else if (preset == "random") {
    RandomFieldSpec spec;
    spec.seed = p.unsigned64("seed", 0);
    spec.shell_min = p.real("shell_min", 1.0);
    spec.shell_max = p.real("shell_max", 4.0);
    spec.l2_norm = p.real("l2_norm", 1.0);
    expect(p, "shell_min", spec.shell_min >= 0.0 && spec.shell_min <= spec.shell_max,
           "need 0 <= shell_min <= shell_max");
    expect(p, "shell_max", spec.shell_max <= grid.dealias_cutoff(),
           "exceeds the dealiasing cutoff " + std::to_string(grid.dealias_cutoff()) + " of the grid");
    expect(p, "l2_norm", spec.l2_norm >= 0.0, "must be >= 0");
    s.u0 = random_solenoidal(grid, spec);
  } else {
    p.fail("preset", "expected taylor-green or random, got '" + preset + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------

void run_constant(const ParameterSet& p, RunReport& report) {
  const DecayQuery q{p.real("alpha", 1.0), p.integer("m", 1)};
  expect(p, "alpha", q.alpha >= 0.0, "must be >= 0");
  expect(p, "m", q.m >= 0, "must be >= 0");
  const ConstantResult r = k_constant(q);
  std::ostringstream out;
  out << "K(alpha=" << format_double(q.alpha) << ", m=" << q.m << ") = " << fixed6(r.K) << "\n";
  switch (r.location) {
    case DeltaLocation::kInterior:
      out << "delta* = " << fixed6(r.delta_star) << " (interior minimum)\n";
      break;
    case DeltaLocation::kZeroLimit:
      out << "delta* -> 0 (boundary: infimum approached as delta -> 0, not attained)\n";
      break;
    case DeltaLocation::kInfinityLimit:
      out << "delta* -> inf (boundary: infimum approached as delta -> inf, not attained)\n";
      break;
  }
  out << "K (full precision) = " << format_double(r.K) << "\n";
  report.summary = out.str();
}

void run_heat(const ParameterSet& p, const std::filesystem::path& dir, RunReport& report) {
  const RadialProfile prof = heat_profile(p);
  const double nu = positive(p, "nu", 1.0);
  const int M = p.integer("m", 4);
  if (M < 1) p.fail("m", "highest checked order must be >= 1");
  const auto times = heat_times(p);
  const NormSeries series = heat_series(prof, nu, times, M);
  write_norms(dir, series);

  const double alpha = 0.5 * (prof.kappa + 0.5 * prof.dimension);
  const double L0 = asymptotic_rate(prof, nu, 0).limit;
  std::vector<double> bound(M + 1);
  for (int m = 0; m <= M; ++m) bound[m] = k_constant({alpha, m}).K * std::pow(nu, -0.5 * m) * L0;

  std::ofstream csv(dir / "heat_oracle.csv");
  csv << "t,m,norm,weighted,bound,margin\n";
  std::vector<double> worst_weighted(M + 1, 0.0);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.times[i];
    for (int m = 0; m <= M; ++m) {
      const double norm = series.norm(i, m);
      const double weighted = std::pow(t, alpha + 0.5 * m) * norm;
      worst_weighted[m] = std::max(worst_weighted[m], weighted);
      csv << format_double(t) << ',' << m << ',' << format_double(norm) << ',' << format_double(weighted)
          << ',' << format_double(bound[m]) << ',' << format_double(bound[m] - weighted) << '\n';
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= M; ++m) {
    const double closed = asymptotic_rate(prof, nu, m).limit;
    const double quad = asymptotic_limit_quadrature(prof, nu, m);
    report.checks.push_back(row("limit-quadrature", m, inf, std::abs(quad - closed) / closed, 1e-8));
  }
  for (int m = 1; m <= M; ++m) {
    report.checks.push_back(row("main-inequality", m, inf, asymptotic_rate(prof, nu, m).limit, bound[m]));
    report.checks.push_back(row("weighted-below-bound", m, times.back(), worst_weighted[m], bound[m]));
  }

  std::ostringstream out;
  out << "heat oracle: n=" << prof.dimension << " kappa=" << format_double(prof.kappa)
      << " alpha=" << format_double(alpha) << " L0=" << format_double(L0) << "\n";
  for (int m = 1; m <= M; ++m) {
    out << "  m=" << m << "  L_m=" << format_double(asymptotic_rate(prof, nu, m).limit)
        << "  bound=" << format_double(bound[m]) << "\n";
  }
  report.summary = out.str();
}

struct SimulationOutcome {
  SimulationResult result;
  SimulationSetup setup;
};

SimulationOutcome run_simulation(const ParameterSet& p, const std::filesystem::path& dir, int min_order,
                                 RunReport& report) {
  SimulationOutcome o{{}, simulation_setup(p, min_order)};
  o.result = simulate(o.setup.u0, o.setup.cfg);
  write_norms(dir, o.result.series);
  if (o.setup.cfg.snapshot_stride > 0) {
    std::filesystem::create_directories(dir / "snapshots");
    for (std::size_t i = 0; i < o.result.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%06zu.bin", i);
      write_snapshot(dir / "snapshots" / name, o.result.snapshots[i]);
    }
  }
  for (const auto& w : o.result.warnings) report.notes.push_back("warning: " + w);
  const GridSpec& g = o.setup.u0.grid();
  const double u0 = seminorm(o.setup.u0, 0);
  report.notes.push_back("regularity time bound (informational): " +
                         format_double(regularity_time_bound(g.dimension, g.viscosity, u0)));
  return o;
}

void run_simulate(const ParameterSet& p, const std::filesystem::path& dir, RunReport& report) {
  const SimulationOutcome o = run_simulation(p, dir, 1, report);
  const NormSeries& s = o.result.series;
  const double T = s.times.back();
  const double nu = o.setup.u0.grid().viscosity;

  const double div = *std::max_element(o.result.divergence.begin(), o.result.divergence.end());
  report.checks.push_back(row("divergence", 0, T, div, p.real("divergence_tol", 1e-12)));

  const double e0 = s.norm(0, 0) * s.norm(0, 0);
  const double residual = energy_inequality_check(s, nu, 0.0, T);
  report.checks.push_back(
      row("energy-inequality", 0, T, e0 > 0.0 ? residual / e0 : residual, p.real("energy_tol", 1e-6)));

  double rise = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) rise = std::max(rise, s.norm(i, 0) - s.norm(i - 1, 0));
  if (s.size() > 1) report.checks.push_back(row("energy-monotone", 0, T, rise, 1e-14 * s.norm(0, 0)));

  std::ostringstream out;
  out << "simulated to T=" << format_double(T) << ": ||u(T)||=" << format_double(s.norms.back()[0]);
  if (o.setup.taylor_green) {
    const double exact = s.norm(0, 0) * std::exp(-2.0 * nu * T);
    const double err = exact > 0.0 ? std::abs(s.norms.back()[0] - exact) / exact : 0.0;
    report.checks.push_back(row("taylor-green-exact", 0, T, err, 1e-6));
    out << " (exact " << format_double(exact) << ")";
  }
  out << "\n";
  report.summary = out.str();
}

void run_verify_chain(const ParameterSet& p, const std::filesystem::path& dir, RunReport& report) {
  const std::string source = p.text("source", "heat-oracle");
  const int k_max = p.integer("chain_k_max", 1);
  if (k_max < 1) p.fail("chain_k_max", "must be >= 1");

  NormSeries series;
  double nu = 0.0;
  double alpha_default = 0.0;
  bool nonlinear = false;
  int dimension = 0;
  double u0_norm = 0.0;
  if (source == "heat-oracle") {
    const RadialProfile prof = heat_profile(p);
    nu = positive(p, "nu", 1.0);
    series = heat_series(prof, nu, heat_times(p), k_max + 1);
    write_norms(dir, series);
    alpha_default = 0.5 * (prof.kappa + 0.5 * prof.dimension);
  } else if (source == "simulate") {
    const SimulationOutcome o = run_simulation(p, dir, k_max + 1, report);
    series = o.result.series;
    nu = o.setup.u0.grid().viscosity;
    nonlinear = true;
    dimension = o.setup.u0.grid().dimension;
    u0_norm = series.norm(0, 0);
  } else if (source == "file") {
    if (!p.has("norms_file")) p.fail("norms_file", "required when source = file");
    std::ifstream in(p.text("norms_file", ""));
    if (!in) p.fail("norms_file", "cannot open '" + p.text("norms_file", "") + "'");
    series = read_norms_csv(in);
    if (!p.has("nu")) p.fail("nu", "required when source = file");
    nu = positive(p, "nu", 1.0);
    write_norms(dir, series);
  } else {
    p.fail("source", "expected heat-oracle, simulate or file, got '" + source + "'");
  }
  if (series.max_order() < k_max + 1) {
    p.fail("chain_k_max", "series records orders up to " + std::to_string(series.max_order()) + ", need " +
                              std::to_string(k_max + 1));
  }

  ChainCheckConfig cfg;
  cfg.alpha = p.real("alpha", alpha_default);
  cfg.delta = p.real("delta", 1.0);
  cfg.epsilon = p.real("epsilon", 1.0);
  cfg.k_max = k_max;
  const double T = series.times.back();

  const auto t0_opt = p.real_or_auto("t0");
  if (t0_opt) {
    cfg.t0 = *t0_opt;
  } else {
    const auto threshold = absorption_threshold(series, cfg.epsilon, nu);
    if (!threshold || *threshold >= T) {
      const double sup = (cfg.epsilon * nu - absorption_margin(series, series.times.front(), cfg.epsilon, nu)) /
                         kFirstOrderAbsorptionConstant;
      report.checks.push_back(row("absorption", 1, T, kFirstOrderAbsorptionConstant * sup, cfg.epsilon * nu));
      report.checks.back().pass = false;
      report.notes.push_back("absorption threshold not reached before T; chain not evaluated");
      report.summary = "absorption threshold not reached before T\n";
      return;
    }
    cfg.t0 = *threshold;
  }

  cfg.window.end = p.real("window_end", T);
  const auto ws = p.real_or_auto("window_start");
  if (ws) {
    cfg.window.start = *ws;
  } else {
    cfg.window.start = cfg.t0;
    const double target = 0.1 * series.norm(0, 0);
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series.times[i] >= cfg.t0 && series.norm(i, 0) <= target) {
        cfg.window.start = series.times[i];
        break;
      }
    }
    if (!(cfg.window.start < cfg.window.end)) cfg.window.start = cfg.t0;
  }

  expect(p, "alpha", cfg.alpha >= 0.0, "must be >= 0");
  expect(p, "delta", cfg.delta > 0.0, "must be positive");
  expect(p, "epsilon", cfg.epsilon > 0.0 && cfg.epsilon < 2.0, "must lie in (0, 2)");
  expect(p, "t0", cfg.t0 >= series.times.front() && cfg.t0 < T, "must lie in [first sample, T)");
  expect(p, "window_end", cfg.window.end <= T, "must not exceed the last sample time");
  expect(p, "window_start", cfg.window.start >= cfg.t0 && cfg.window.start < cfg.window.end,
         "window must satisfy t0 <= window_start < window_end");

  WeightedIntegralReport chain;
  try {
    chain = check_chain(series, nu, cfg);
  } catch (const ConfigError& e) {
    p.fail(std::string(e.what()).find("window") != std::string::npos ? "window_start" : "t0", e.what());
  }
  if (nonlinear) {
    const double margin = absorption_margin(series, chain.t0, cfg.epsilon, nu);
    report.checks.push_back(
        row("absorption", 1, chain.t0, cfg.epsilon * nu - margin, cfg.epsilon * nu));
    report.checks.back().pass = margin > 0.0;
  }
  report.checks.push_back(row("tail-window", 0, cfg.window.start, chain.lambda.tail_ratio, 0.1));
  report.checks.back().pass = chain.lambda.tail_ok;
  for (const auto& r : chain.records) {
    report.checks.push_back({to_string(r.check), r.k, r.t, r.lhs, r.rhs, r.margin, r.pass});
  }

  report.notes.push_back("t0 = " + format_double(chain.t0) + (t0_opt ? "" : " (absorption threshold)"));
  report.notes.push_back("lambda0 = " + format_double(chain.lambda.lambda0) + " over window [" +
                         format_double(cfg.window.start) + ", " + format_double(cfg.window.end) + "]");
  report.notes.push_back("tail ratio ||u(window start)|| / ||u(0)|| = " + format_double(chain.lambda.tail_ratio));
  for (const ChainCheck c : {ChainCheck::kBaseIntegral, ChainCheck::kFirstOrderPointwise,
                             ChainCheck::kSecondOrderIntegral, ChainCheck::kPointwise, ChainCheck::kIntegral}) {
    const bool per_k = c == ChainCheck::kPointwise || c == ChainCheck::kIntegral;
    const int k_lo = per_k ? 0 : (c == ChainCheck::kBaseIntegral ? 0 : 1);
    const int k_hi = per_k ? k_max : k_lo;
    for (int k = k_lo; k <= k_hi; ++k) {
      const auto first = chain.first_passing_time(c, k);
      report.notes.push_back(std::string("first passing time ") + to_string(c) + " k=" + std::to_string(k) +
                             ": " + (first ? format_double(*first) : std::string("never")));
    }
  }
  if (nonlinear) {
    report.notes.push_back("regularity time bound (informational): " +
                           format_double(regularity_time_bound(dimension, nu, u0_norm)));
  }

  std::ostringstream out;
  out << "chain k<=" << k_max << " from t0=" << format_double(chain.t0) << ": " << chain.records.size()
      << " records, " << chain.failures() << " failures, worst relative margin "
      << format_double(chain.worst_relative_margin()) << "\n";
  report.summary = out.str();
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::kConstant:
      return "constant";
    case Mode::kHeatOracle:
      return "heat-oracle";
    case Mode::kSimulate:
      return "simulate";
    case Mode::kVerifyChain:
      return "verify-chain";
    case Mode::kSweep:
      return "sweep";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(const std::string& name) {
  for (const Mode m : {Mode::kConstant, Mode::kHeatOracle, Mode::kSimulate, Mode::kVerifyChain, Mode::kSweep}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

const std::vector<KeyInfo>& mode_keys(Mode mode) {
  static const std::vector<KeyInfo> constant = merged({&kCommonKeys, &kConstantKeys});
  static const std::vector<KeyInfo> heat_order = {{"m", "highest checked derivative order"}};
  static const std::vector<KeyInfo> heat = merged({&kCommonKeys, &kHeatKeys, &heat_order});
  static const std::vector<KeyInfo> sim = merged({&kCommonKeys, &kSimulateKeys});
  static const std::vector<KeyInfo> chain = merged({&kCommonKeys, &kChainKeys, &kHeatKeys, &kSimulateKeys});
  static const std::vector<KeyInfo> sweep = {{"mode", "child mode"}, {"jobs", "concurrent children"}};
  switch (mode) {
    case Mode::kConstant:
      return constant;
    case Mode::kHeatOracle:
      return heat;
    case Mode::kSimulate:
      return sim;
    case Mode::kVerifyChain:
      return chain;
    case Mode::kSweep:
      return sweep;
  }
  return sweep;
}

ExperimentConfig make_experiment(Mode mode, const ConfigDocument* doc,
                                 const std::vector<ConfigEntry>& overrides) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.params = ParameterSet(doc ? doc->source : "<command line>");
  if (doc) {
    for (const auto& e : doc->globals) cfg.params.set(e);
    if (doc->sections.size() != 1) {
      throw ConfigError(doc->source + ": expected exactly one [mode] section, found " +
                        std::to_string(doc->sections.size()));
    }
    const ConfigSection& section = doc->sections.front();
    if (section.name != to_string(mode)) {
      throw ConfigError(doc->source + ":" + std::to_string(section.line) + ": section [" + section.name +
                        "] does not match subcommand '" + to_string(mode) + "'");
    }
    for (const auto& e : section.entries) cfg.params.set(e);
  }
  for (const auto& e : overrides) cfg.params.set(e);
  cfg.params.require_known(names(mode_keys(mode)));
  return cfg;
}

std::size_t RunReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRow& r) { return !r.pass; }));
}

double RunReport::worst_margin() const noexcept {
  double worst = 1.0;
  for (const auto& r : checks) {
    // 0 <= 0 at the chain start carries no information.
    if (r.rhs == 0.0 && r.lhs == 0.0) continue;
    worst = std::min(worst, r.rhs != 0.0 ? r.margin / std::abs(r.rhs) : -1.0);
  }
  return worst;
}

std::filesystem::path resolve_output_dir(const ParameterSet& params) {
  if (params.has("output_dir")) return params.text("output_dir", "");
  if (const char* env = std::getenv("NSDECAY_OUTPUT_DIR"); env && *env) return env;
  return "nsdecay-out";
}

void write_margins_csv(const std::filesystem::path& path, const std::vector<CheckRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "check,k,t,lhs,rhs,margin,pass\n";
  for (const auto& r : rows) {
    out << r.check << ',' << r.k << ',' << format_double(r.t) << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.margin) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "nsdecay " << report.version << "\n";
  out << "mode: " << to_string(report.mode) << "\n";
  out << "seed: " << report.seed << "\n";
  out << "wall_time_s: " << format_double(report.wall_seconds) << "\n";
  out << "config:\n";
  for (const auto& line : report.config_echo) out << "  " << line << "\n";
  out << "checks: " << report.checks.size() << "\n";
  out << "failures: " << report.failures() << "\n";
  out << "worst_relative_margin: " << format_double(report.worst_margin()) << "\n";
  out << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  if (!report.summary.empty()) out << "summary:\n  " << report.summary;
  if (!report.notes.empty()) {
    out << "notes:\n";
    for (const auto& n : report.notes) out << "  " << n << "\n";
  }
  std::size_t shown = 0;
  for (const auto& r : report.checks) {
    if (r.pass) continue;
    if (shown++ == 0) out << "failed checks (first 20):\n";
    if (shown > 20) break;
    out << "  " << r.check << " k=" << r.k << " t=" << format_double(r.t) << " lhs=" << format_double(r.lhs)
        << " rhs=" << format_double(r.rhs) << "\n";
  }
}

RunReport run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir) {
  const auto start = std::chrono::steady_clock::now();
  const ParameterSet& p = config.params;
  RunReport report;
  report.mode = config.mode;
  report.version = NSDECAY_VERSION;
  report.seed = p.unsigned64("seed", 0);
  for (const auto& [key, e] : p.entries()) {
    report.config_echo.push_back(key + " = " + e.value +
                                 (e.line ? "  (" + p.source() + ":" + std::to_string(e.line) + ")" : "  (flag)"));
  }

  if (config.mode == Mode::kConstant) {
    run_constant(p, report);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  std::filesystem::create_directories(output_dir);
  switch (config.mode) {
    case Mode::kHeatOracle:
      run_heat(p, output_dir, report);
      break;
    case Mode::kSimulate:
      run_simulate(p, output_dir, report);
      break;
    case Mode::kVerifyChain:
      run_verify_chain(p, output_dir, report);
      break;
    default:
      throw ConfigError(std::string("mode '") + to_string(config.mode) + "' is not a single experiment");
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_margins_csv(output_dir / "margins.csv", report.checks);
  write_report(output_dir / "report.txt", report);
  return report;
}

}  // namespace nsdecay::cli

#include "nsdecay/chain_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "nsdecay/errors.hpp"

namespace nsdecay {
namespace {

// Sample times are compared with a small relative slack so that configured
// times land on recorded samples despite rounding.
double slack(const NormSeries& s) {
  return 1e-12 * std::max(1.0, std::abs(s.times.back()));
}

std::size_t first_at_or_after(const NormSeries& s, double t) {
  const auto it = std::lower_bound(s.times.begin(), s.times.end(), t - slack(s));
  return static_cast<std::size_t>(it - s.times.begin());
}

std::size_t last_at_or_before(const NormSeries& s, double t) {
  const auto it = std::upper_bound(s.times.begin(), s.times.end(), t + slack(s));
  return static_cast<std::size_t>(it - s.times.begin()) - 1;
}

void require_nonempty(const NormSeries& s) {
  if (s.empty()) throw RangeError("norm series is empty");
}

void require_order(const NormSeries& s, int m) {
  if (m < 0 || m > s.max_order()) {
    throw ConfigError("norm series records orders 0.." + std::to_string(s.max_order()) +
                      ", order " + std::to_string(m) + " requested");
  }
}

double product_factor(double alpha, double delta, int k) {
  double p = 1.0;
  for (int j = 0; j <= k; ++j) p *= 2.0 * alpha + j + delta;
  return p;
}

}  // namespace

void ChainCheckConfig::validate() const {
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(epsilon > 0.0 && epsilon < 2.0)) throw ConfigError("epsilon must lie in (0, 2)");
  if (!(t0 >= 0.0)) throw ConfigError("t0 must be >= 0");
  if (k_max < 1) throw ConfigError("chain k_max must be >= 1");
  if (!(window.start < window.end)) throw ConfigError("window start must precede window end");
}

const char* to_string(ChainCheck check) noexcept {
  switch (check) {
    case ChainCheck::kBaseIntegral:
      return "base-integral";
    case ChainCheck::kFirstOrderPointwise:
      return "first-order-pointwise";
    case ChainCheck::kSecondOrderIntegral:
      return "second-order-integral";
    case ChainCheck::kPointwise:
      return "pointwise";
    case ChainCheck::kIntegral:
      return "integral";
  }
  return "unknown";
}

bool WeightedIntegralReport::all_passed() const noexcept { return failures() == 0; }

std::size_t WeightedIntegralReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const ChainRecord& r) { return !r.pass; }));
}

double WeightedIntegralReport::worst_relative_margin() const noexcept {
  double worst = 1.0;
  for (const auto& r : records) {
    if (r.rhs > 0.0) worst = std::min(worst, r.margin / r.rhs);
    else if (r.lhs > 0.0) worst = std::min(worst, -1.0);
  }
  return worst;
}

std::optional<double> WeightedIntegralReport::first_passing_time(ChainCheck check, int k) const {
  std::optional<double> since;
  for (const auto& r : records) {
    if (r.check != check || r.k != k) continue;
    if (!r.pass) {
      since.reset();
    } else if (!since) {
      since = r.t;
    }
  }
  return since;
}

double energy_inequality_check(const NormSeries& series, double nu, double s_time, double t_time) {
  require_nonempty(series);
  require_order(series, 1);
  if (!(s_time < t_time)) throw RangeError("energy check needs s < t");
  if (s_time < series.times.front() - slack(series) || t_time > series.times.back() + slack(series)) {
    throw RangeError("energy check interval lies outside the recorded series");
  }
  const std::size_t is = first_at_or_after(series, s_time);
  const std::size_t it = last_at_or_before(series, t_time);
  if (is > it) throw RangeError("no recorded samples between s and t");

  double dissipation = 0.0;
  for (std::size_t i = is; i < it; ++i) {
    const double a = series.norm(i, 1);
    const double b = series.norm(i + 1, 1);
    dissipation += 0.5 * (series.times[i + 1] - series.times[i]) * (a * a + b * b);
  }
  const double us = series.norm(is, 0);
  const double ut = series.norm(it, 0);
  return ut * ut + 2.0 * nu * dissipation - us * us;
}

LimsupEstimate lambda0_estimate(const NormSeries& series, double alpha, TimeWindow window) {
  require_nonempty(series);
  if (!(window.start <= window.end)) throw RangeError("window start must not exceed its end");
  const std::size_t lo = first_at_or_after(series, window.start);
  if (lo >= series.size() || series.times[lo] > window.end + slack(series)) {
    throw RangeError("lambda0 window holds no recorded samples");
  }
  const std::size_t hi = last_at_or_before(series, window.end);

  LimsupEstimate est;
  est.window = window;
  est.alpha = alpha;
  for (std::size_t i = lo; i <= hi; ++i) {
    est.lambda0 = std::max(est.lambda0, std::pow(series.times[i], alpha) * series.norm(i, 0));
  }
  const double initial = series.norm(0, 0);
  est.tail_ratio = initial > 0.0 ? series.norm(lo, 0) / initial : 0.0;
  est.tail_ok = est.tail_ratio <= 0.1;
  return est;
}

std::vector<double> cumulative_weighted_integral(const NormSeries& series, std::size_t start,
                                                 double t0, double p, int m) {
  require_order(series, m);
  std::vector<double> out;
  if (start >= series.size()) return out;
  out.reserve(series.size() - start);
  auto integrand = [&](std::size_t i) {
    const double v = series.norm(i, m);
    return std::pow(std::max(series.times[i] - t0, 0.0), p) * v * v;
  };
  double acc = 0.0;
  double prev = integrand(start);
  out.push_back(0.0);
  for (std::size_t i = start + 1; i < series.size(); ++i) {
    const double cur = integrand(i);
    acc += 0.5 * (series.times[i] - series.times[i - 1]) * (prev + cur);
    out.push_back(acc);
    prev = cur;
  }
  return out;
}

double weighted_integral(const NormSeries& series, double t0, double p, int m) {
  require_nonempty(series);
  if (t0 < series.times.front() - slack(series) || t0 > series.times.back() + slack(series)) {
    throw RangeError("t0 lies outside the recorded series");
  }
  const auto cumulative = cumulative_weighted_integral(series, first_at_or_after(series, t0), t0, p, m);
  return cumulative.empty() ? 0.0 : cumulative.back();
}

double base_integral_bound(double alpha, double delta, double epsilon, double nu, double lambda0,
                           double elapsed) {
  const double l = lambda0 + epsilon;
  return (1.0 / (2.0 * nu)) * ((2.0 * alpha + delta) / delta) * l * l * std::pow(elapsed, delta);
}

double first_order_pointwise_bound(double alpha, double delta, double epsilon, double nu,
                                   double lambda0) {
  const double l = lambda0 + epsilon;
  return (1.0 / (2.0 * nu)) * (2.0 * alpha + 1.0 + delta) * ((2.0 * alpha + delta) / delta) * l * l;
}

double second_order_integral_bound(double alpha, double delta, double epsilon, double nu,
                                   double lambda0, double elapsed) {
  const double l = lambda0 + epsilon;
  const double damp = (2.0 - epsilon) * nu;
  return (2.0 * alpha + 1.0 + delta) * (2.0 * alpha + delta) / (delta * damp * damp) * l * l *
         std::pow(elapsed, delta);
}

double pointwise_bound(double alpha, double delta, double epsilon, double nu, double lambda0, int k) {
  const double l = lambda0 + epsilon;
  const double damp = (2.0 - epsilon) * nu;
  return product_factor(alpha, delta, k) / (delta * std::pow(damp, k)) * l * l;
}

double integral_bound(double alpha, double delta, double epsilon, double nu, double lambda0, int k,
                      double elapsed) {
  const double l = lambda0 + epsilon;
  const double damp = (2.0 - epsilon) * nu;
  return product_factor(alpha, delta, k) / (delta * std::pow(damp, k + 1)) * l * l *
         std::pow(elapsed, delta);
}

WeightedIntegralReport check_chain(const NormSeries& series, double nu,
                                   const ChainCheckConfig& cfg) {
  cfg.validate();
  require_nonempty(series);
  if (!(nu > 0.0)) throw ConfigError("viscosity must be positive");
  if (series.max_order() < cfg.k_max + 1) {
    throw ConfigError("chain check up to k = " + std::to_string(cfg.k_max) + " needs seminorm order " +
                      std::to_string(cfg.k_max + 1) + ", series records up to " +
                      std::to_string(series.max_order()));
  }
  if (!(cfg.t0 < series.times.back())) throw ConfigError("t0 must precede the end of the series");
  if (cfg.window.start < cfg.t0 || cfg.window.end > series.times.back() + slack(series)) {
    throw ConfigError("lambda0 window must lie inside (t0, T]");
  }

  WeightedIntegralReport report;
  report.lambda = lambda0_estimate(series, cfg.alpha, cfg.window);
  const std::size_t start = first_at_or_after(series, cfg.t0);
  const double t0 = series.times[start];
  report.t0 = t0;

  const double a = cfg.alpha;
  const double d = cfg.delta;
  const double e = cfg.epsilon;
  const double lam = report.lambda.lambda0;

  const auto base = cumulative_weighted_integral(series, start, t0, 2.0 * a + d, 1);
  const auto second = cumulative_weighted_integral(series, start, t0, 2.0 * a + 1.0 + d, 2);
  std::vector<std::vector<double>> higher;
  for (int k = 0; k <= cfg.k_max; ++k) {
    higher.push_back(cumulative_weighted_integral(series, start, t0, 2.0 * a + k + d, k + 1));
  }

  auto add = [&](ChainCheck check, int k, double t, double lhs, double rhs) {
    report.records.push_back(
        {check, k, t, lhs, rhs, rhs - lhs, lhs <= rhs * (1.0 + kChainTolerance)});
  };

  for (std::size_t i = start; i < series.size(); ++i) {
    const std::size_t j = i - start;
    const double t = series.times[i];
    const double elapsed = t - t0;
    const double du = series.norm(i, 1);

    add(ChainCheck::kBaseIntegral, 0, t, base[j], base_integral_bound(a, d, e, nu, lam, elapsed));
    add(ChainCheck::kFirstOrderPointwise, 1, t, std::pow(elapsed, 2.0 * a + 1.0) * du * du,
        first_order_pointwise_bound(a, d, e, nu, lam));
    add(ChainCheck::kSecondOrderIntegral, 1, t, second[j],
        second_order_integral_bound(a, d, e, nu, lam, elapsed));
    for (int k = 0; k <= cfg.k_max; ++k) {
      const double dk = series.norm(i, k);
      add(ChainCheck::kPointwise, k, t, std::pow(elapsed, 2.0 * a + k) * dk * dk,
          pointwise_bound(a, d, e, nu, lam, k));
      add(ChainCheck::kIntegral, k, t, higher[k][j], integral_bound(a, d, e, nu, lam, k, elapsed));
    }
  }
  return report;
}

double absorption_margin(const NormSeries& series, double t0, double epsilon, double nu) {
  require_nonempty(series);
  require_order(series, 1);
  if (t0 < series.times.front() - slack(series) || t0 > series.times.back() + slack(series)) {
    throw RangeError("t0 lies outside the recorded series");
  }
  double sup = 0.0;
  for (std::size_t i = first_at_or_after(series, t0); i < series.size(); ++i) {
    sup = std::max(sup, series.norm(i, 1));
  }
  return epsilon * nu - kFirstOrderAbsorptionConstant * sup;
}

std::optional<double> absorption_threshold(const NormSeries& series, double epsilon, double nu) {
  require_nonempty(series);
  require_order(series, 1);
  // Suffix maxima give sup_{tau >= t_i} ||Du|| for every i in one pass.
  std::vector<double> suffix(series.size());
  double running = 0.0;
  for (std::size_t i = series.size(); i-- > 0;) {
    running = std::max(running, series.norm(i, 1));
    suffix[i] = running;
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (epsilon * nu - kFirstOrderAbsorptionConstant * suffix[i] > 0.0) return series.times[i];
  }
  return std::nullopt;
}

double regularity_time_bound(int dimension, double nu, double u0_norm) {
  switch (dimension) {
    case 2:
      return 0.0;
    case 3:
      return std::pow(nu, -5.0) * std::pow(u0_norm, 4.0);
    case 4:
      return std::pow(nu, -3.0) * u0_norm * u0_norm;
    default:
      throw DomainError("regularity time bound known only for n = 2, 3, 4");
  }
}

}  // namespace nsdecay

#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "nsdecay/norm_series.hpp"

namespace nsdecay {

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

/// Parameters of the weighted-energy induction: decay exponent alpha,
/// weight offset delta > 0, slack 0 < epsilon < 2, start time t0, highest
/// order k_max, and the tail window used to estimate lambda_0.
struct ChainCheckConfig {
  double alpha = 0.0;
  double delta = 1.0;
  double epsilon = 1.0;
  double t0 = 0.0;
  int k_max = 1;
  TimeWindow window{};

  void validate() const;
};

/// Finite-horizon stand-in for limsup t^alpha ||u(t)||: the maximum over the
/// window samples. tail_ok records whether ||u|| had fallen at least 10x
/// below ||u(0)|| by the window start.
struct LimsupEstimate {
  double lambda0 = 0.0;
  TimeWindow window{};
  double alpha = 0.0;
  double tail_ratio = 0.0;
  bool tail_ok = false;
};

enum class ChainCheck {
  kBaseIntegral,         ///< \int (tau-t0)^{2a+d} ||Du||^2
  kFirstOrderPointwise,  ///< (t-t0)^{2a+1} ||Du(t)||^2
  kSecondOrderIntegral,  ///< \int (tau-t0)^{2a+1+d} ||D^2 u||^2
  kPointwise,            ///< (t-t0)^{2a+k} ||D^k u(t)||^2
  kIntegral,             ///< \int (tau-t0)^{2a+k+d} ||D^{k+1} u||^2
};

const char* to_string(ChainCheck check) noexcept;

struct ChainRecord {
  ChainCheck check = ChainCheck::kBaseIntegral;
  int k = 0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct WeightedIntegralReport {
  std::vector<ChainRecord> records;
  LimsupEstimate lambda;
  /// t0 snapped to the first recorded sample at or after the requested t0.
  double t0 = 0.0;

  bool all_passed() const noexcept;
  std::size_t failures() const noexcept;
  /// Smallest margin / rhs over all records (1 when rhs = lhs = 0).
  double worst_relative_margin() const noexcept;
  /// Earliest t such that every record of (check, k) at or after t passes.
  std::optional<double> first_passing_time(ChainCheck check, int k) const;
};

/// Constant in front of the nonlinear term of the first-order weighted
/// energy estimate in R^4.
inline constexpr double kFirstOrderAbsorptionConstant = 8.0 * std::numbers::sqrt2;

/// Relative tolerance of the lhs <= rhs comparisons.
inline constexpr double kChainTolerance = 1e-9;

/// ||u(t)||^2 + 2 nu \int_s^t ||Du||^2 - ||u(s)||^2 by composite trapezoid
/// over recorded samples. s and t snap inward to recorded samples; throws
/// RangeError if s >= t or either lies outside the series.
double energy_inequality_check(const NormSeries& series, double nu, double s_time, double t_time);

/// Throws RangeError if the window holds no samples.
LimsupEstimate lambda0_estimate(const NormSeries& series, double alpha, TimeWindow window);

/// \int_{t0}^{T} (tau - t0)^p ||D^m u(tau)||^2 d tau by trapezoid over the
/// samples with tau >= t0 (no interpolation between samples).
double weighted_integral(const NormSeries& series, double t0, double p, int m);

/// Running version of weighted_integral: entry i is the integral from
/// times[start] to times[start + i].
std::vector<double> cumulative_weighted_integral(const NormSeries& series, std::size_t start,
                                                 double t0, double p, int m);

/// Evaluate every weighted inequality of the induction at every recorded
/// t >= t0 and every k in 0..k_max. Throws ConfigError if the series lacks
/// order k_max + 1 or the window does not sit inside (t0, T].
WeightedIntegralReport check_chain(const NormSeries& series, double nu,
                                   const ChainCheckConfig& cfg);

/// epsilon nu - K1 sup_{tau >= t0} ||Du(tau)||, K1 = 8 sqrt 2. Positive
/// means the first-order nonlinear term is absorbed by dissipation.
double absorption_margin(const NormSeries& series, double t0, double epsilon, double nu);

/// First recorded time at which absorption_margin turns positive.
std::optional<double> absorption_threshold(const NormSeries& series, double epsilon, double nu);

// Right-hand sides of the weighted inequalities, exposed for tests and
// for translating the pointwise bound into the decay constant.
double base_integral_bound(double alpha, double delta, double epsilon, double nu, double lambda0,
                           double elapsed);
double first_order_pointwise_bound(double alpha, double delta, double epsilon, double nu,
                                   double lambda0);
double second_order_integral_bound(double alpha, double delta, double epsilon, double nu,
                                   double lambda0, double elapsed);
double pointwise_bound(double alpha, double delta, double epsilon, double nu, double lambda0, int k);
double integral_bound(double alpha, double delta, double epsilon, double nu, double lambda0, int k,
                      double elapsed);

/// Known upper bound on the time after which a Leray solution is smooth:
/// 0 for n = 2, nu^-5 ||u0||^4 for n = 3, nu^-3 ||u0||^2 for n = 4.
/// Informational only; never enforced.
double regularity_time_bound(int dimension, double nu, double u0_norm);

}  // namespace nsdecay

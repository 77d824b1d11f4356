#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsdecay/chain_verifier.hpp"
#include "nsdecay/decay_constants.hpp"
#include "nsdecay/errors.hpp"
#include "nsdecay/heat_oracle.hpp"
#include "oracles.hpp"

using namespace nsdecay;
using nsdecay::testing::taylor_green_norm;

namespace {

constexpr double kPi = std::numbers::pi;

NormSeries taylor_green_series(double A, double nu, double T, double dt, int m_max) {
  NormSeries s;
  const auto steps = static_cast<int>(std::lround(T / dt));
  for (int i = 0; i <= steps; ++i) {
    const double t = i * dt;
    std::vector<double> row;
    for (int m = 0; m <= m_max; ++m) row.push_back(taylor_green_norm(A, nu, t, m));
    s.append(t, std::move(row));
  }
  return s;
}

NormSeries zero_series(double T, int samples, int m_max) {
  NormSeries s;
  for (int i = 0; i < samples; ++i) s.append(T * i / (samples - 1), std::vector<double>(m_max + 1, 0.0));
  return s;
}

RadialProfile profile(double kappa, int n) {
  RadialProfile p;
  p.kappa = kappa;
  p.dimension = n;
  return p;
}

ChainCheckConfig chain_config(double alpha, double t0, TimeWindow window, int k_max) {
  ChainCheckConfig c;
  c.alpha = alpha;
  c.delta = 1.0;
  c.epsilon = 1.0;
  c.t0 = t0;
  c.k_max = k_max;
  c.window = window;
  return c;
}

}  // namespace

TEST(EnergyCheck, TaylorGreenBalancesExactly) {
  const NormSeries s = taylor_green_series(1.0, 0.1, 1.0, 1e-3, 1);
  const double e0 = s.norm(0, 0) * s.norm(0, 0);
  EXPECT_LE(std::abs(energy_inequality_check(s, 0.1, 0.0, 1.0)), 1e-8 * e0);
  EXPECT_LE(std::abs(energy_inequality_check(s, 0.1, 0.25, 0.75)), 1e-8 * e0);
}

TEST(EnergyCheck, ZeroAndHeatSeries) {
  EXPECT_EQ(energy_inequality_check(zero_series(1.0, 11, 1), 1.0, 0.0, 1.0), 0.0);
  const RadialProfile p = profile(0.0, 3);
  const NormSeries h = heat_series(p, 0.5, heat_sample_times(10.0), 1);
  const double e0 = h.norm(0, 0) * h.norm(0, 0);
  EXPECT_LE(std::abs(energy_inequality_check(h, 0.5, 0.0, 10.0)), 1e-5 * e0);
}

TEST(EnergyCheck, RejectsBadIntervals) {
  const NormSeries s = taylor_green_series(1.0, 0.1, 1.0, 0.1, 1);
  EXPECT_THROW(energy_inequality_check(s, 0.1, 0.5, 0.5), RangeError);
  EXPECT_THROW(energy_inequality_check(s, 0.1, 0.6, 0.5), RangeError);
  EXPECT_THROW(energy_inequality_check(s, 0.1, -1.0, 0.5), RangeError);
  EXPECT_THROW(energy_inequality_check(s, 0.1, 0.0, 2.0), RangeError);
  EXPECT_THROW(energy_inequality_check(NormSeries{}, 0.1, 0.0, 1.0), RangeError);
}

TEST(Lambda0, HeatGaussianApproachesLimit) {
  // n = 2, kappa = 0, nu = 2: t^{1/2} ||u|| = sqrt(pi t / (1 + 4t)) -> sqrt(pi) / 2.
  const NormSeries h = heat_series(profile(0.0, 2), 2.0, heat_sample_times(1e4), 0);
  const LimsupEstimate est = lambda0_estimate(h, 0.5, {1e3, 1e4});
  EXPECT_NEAR(est.lambda0, std::sqrt(kPi) / 2.0, 1e-3);
  EXPECT_TRUE(est.tail_ok);
}

TEST(Lambda0, TaylorGreenPeak) {
  // t pi sqrt2 e^{-0.2 t} peaks at t = 5.
  const NormSeries s = taylor_green_series(1.0, 0.1, 20.0, 0.01, 1);
  const LimsupEstimate est = lambda0_estimate(s, 1.0, {0.0, 20.0});
  EXPECT_NEAR(est.lambda0, 5.0 * kPi * std::numbers::sqrt2 * std::exp(-1.0), 1e-9);
  EXPECT_FALSE(est.tail_ok);
  const LimsupEstimate late = lambda0_estimate(s, 1.0, {15.0, 20.0});
  EXPECT_NEAR(late.lambda0, 15.0 * kPi * std::numbers::sqrt2 * std::exp(-3.0), 1e-9);
  EXPECT_NEAR(late.tail_ratio, std::exp(-3.0), 1e-12);
  EXPECT_TRUE(late.tail_ok);
  EXPECT_THROW(lambda0_estimate(s, 1.0, {30.0, 40.0}), RangeError);
}

TEST(WeightedIntegral, ConstantIntegrand) {
  NormSeries s;
  for (int i = 0; i <= 10; ++i) s.append(0.5 * i, {2.0, 3.0});
  EXPECT_NEAR(weighted_integral(s, 0.0, 0.0, 1), 9.0 * 5.0, 1e-12);
  EXPECT_NEAR(weighted_integral(s, 2.0, 0.0, 0), 4.0 * 3.0, 1e-12);
  EXPECT_EQ(weighted_integral(s, 5.0, 1.0, 0), 0.0);
  EXPECT_THROW(weighted_integral(s, 0.0, 0.0, 2), ConfigError);
}

TEST(WeightedIntegral, HeatSeriesAgreesWithIndependentQuadrature) {
  const RadialProfile p = profile(1.0, 2);
  const double nu = 1.0, t0 = 2.0, T = 40.0, power = 3.5;
  const NormSeries h = heat_series(p, nu, heat_sample_times(T), 2);
  auto f = [&](double t) {
    const double v = heat_seminorm(p, nu, t, 2);
    return std::pow(t - t0, power) * v * v;
  };
  const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, t0, T, 20, 1e-13);
  EXPECT_NEAR(weighted_integral(h, t0, power, 2), ref, 1e-6 * ref);
}

TEST(Bounds, ClosedFormValues) {
  // alpha = 0, delta = 1, epsilon = 1, nu = 1, lambda0 = 1: (lambda0 + eps)^2 = 4.
  EXPECT_DOUBLE_EQ(base_integral_bound(0, 1, 1, 1, 1, 2.0), 0.5 * 1 * 4 * 2.0);
  EXPECT_DOUBLE_EQ(first_order_pointwise_bound(0, 1, 1, 1, 1), 0.5 * 2 * 1 * 4);
  EXPECT_DOUBLE_EQ(second_order_integral_bound(0, 1, 1, 1, 1, 3.0), 2.0 * 4 * 3.0);
  EXPECT_DOUBLE_EQ(pointwise_bound(0, 1, 1, 1, 1, 2), 1 * 2 * 3 * 4.0);
  EXPECT_DOUBLE_EQ(integral_bound(0, 1, 1, 1, 1, 1, 2.0), 1 * 2 * 4.0 * 2.0);
}

TEST(Bounds, PointwiseBoundReproducesDecayConstant) {
  // epsilon -> 0, delta = 2 delta*, lambda0 = L0: sqrt(bound) = K nu^{-m/2} L0.
  for (double alpha : {0.3, 1.0, 2.5}) {
    for (int m = 1; m <= 6; ++m) {
      for (double nu : {0.1, 1.0, 4.0}) {
        const ConstantResult K = k_constant({alpha, m});
        const double L0 = 1.7;
        const double bound = pointwise_bound(alpha, 2.0 * K.delta_star, 0.0, nu, L0, m);
        const double expected = K.K * std::pow(nu, -0.5 * m) * L0;
        EXPECT_NEAR(std::sqrt(bound), expected, 1e-10 * expected);
      }
    }
  }
}

TEST(CheckChain, HeatProfilePassesEveryInequality) {
  const RadialProfile p = profile(1.0, 2);
  const NormSeries h = heat_series(p, 1.0, heat_sample_times(2000.0), 4);
  const WeightedIntegralReport r = check_chain(h, 1.0, chain_config(1.0, 10.0, {200.0, 2000.0}, 3));
  EXPECT_TRUE(r.all_passed()) << r.failures() << " failures";
  EXPECT_DOUBLE_EQ(r.t0, 10.0);
  EXPECT_GT(r.worst_relative_margin(), 0.0);
  EXPECT_TRUE(r.lambda.tail_ok);
  // Per sample: base, first-order, second-order, plus pointwise and integral for k = 0..3.
  std::size_t samples = 0;
  for (double t : h.times) samples += t >= 10.0 ? 1 : 0;
  EXPECT_EQ(r.records.size(), samples * (3 + 2 * 4));
}

TEST(CheckChain, ZeroSeriesPassesTrivially) {
  const WeightedIntegralReport r =
      check_chain(zero_series(10.0, 101, 3), 0.5, chain_config(0.0, 0.0, {5.0, 10.0}, 2));
  EXPECT_TRUE(r.all_passed());
  for (const auto& rec : r.records) EXPECT_EQ(rec.lhs, 0.0);
}

TEST(CheckChain, TaylorGreenPasses) {
  // From t0 = 20 on, t ||u|| stays below its window maximum.
  const NormSeries s = taylor_green_series(1.0, 0.1, 60.0, 0.01, 3);
  const WeightedIntegralReport r = check_chain(s, 0.1, chain_config(1.0, 20.0, {20.0, 60.0}, 2));
  EXPECT_TRUE(r.all_passed());
}

TEST(CheckChain, ResultIsStableUnderRefinement) {
  const NormSeries coarse = taylor_green_series(1.0, 0.1, 60.0, 0.02, 3);
  const NormSeries fine = taylor_green_series(1.0, 0.1, 60.0, 0.01, 3);
  const auto cfg = chain_config(1.0, 20.0, {20.0, 60.0}, 2);
  const WeightedIntegralReport a = check_chain(coarse, 0.1, cfg);
  const WeightedIntegralReport b = check_chain(fine, 0.1, cfg);
  // Compare the final-time integral records (same t = 60 in both runs).
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const ChainRecord& ra = a.records[a.records.size() - 1 - i];
    if (ra.t < 60.0) break;
    for (std::size_t j = 0; j < b.records.size(); ++j) {
      const ChainRecord& rb = b.records[b.records.size() - 1 - j];
      if (rb.t < 60.0) break;
      if (rb.check == ra.check && rb.k == ra.k && ra.lhs > 0.0) {
        EXPECT_LE(std::abs(ra.lhs - rb.lhs), 1e-4 * rb.lhs) << to_string(ra.check) << " k=" << ra.k;
      }
    }
  }
}

TEST(CheckChain, FirstPassingTimeAfterEarlyViolations) {
  // A late window underestimates lambda0, so early pointwise records fail.
  ChainCheckConfig cfg = chain_config(1.0, 0.0, {40.0, 60.0}, 1);
  cfg.epsilon = 0.01;
  const NormSeries s = taylor_green_series(10.0, 0.1, 60.0, 0.05, 2);
  const WeightedIntegralReport r = check_chain(s, 0.1, cfg);
  EXPECT_FALSE(r.all_passed());
  const auto first = r.first_passing_time(ChainCheck::kPointwise, 0);
  ASSERT_TRUE(first.has_value());
  EXPECT_GT(*first, 0.0);
  for (const auto& rec : r.records) {
    if (rec.check == ChainCheck::kPointwise && rec.k == 0 && rec.t >= *first) EXPECT_TRUE(rec.pass);
  }
  EXPECT_LT(r.worst_relative_margin(), 0.0);
}

TEST(CheckChain, RejectsInvalidConfigurations) {
  const NormSeries s = taylor_green_series(1.0, 0.1, 10.0, 0.1, 2);
  EXPECT_THROW(check_chain(s, 0.1, chain_config(1.0, 0.0, {5.0, 10.0}, 2)), ConfigError);
  EXPECT_THROW(check_chain(s, 0.1, chain_config(1.0, 6.0, {5.0, 10.0}, 1)), ConfigError);
  EXPECT_THROW(check_chain(s, 0.1, chain_config(1.0, 0.0, {5.0, 20.0}, 1)), ConfigError);
  ChainCheckConfig bad = chain_config(1.0, 0.0, {5.0, 10.0}, 1);
  bad.epsilon = 2.0;
  EXPECT_THROW(check_chain(s, 0.1, bad), ConfigError);
  bad.epsilon = 1.0;
  bad.delta = 0.0;
  EXPECT_THROW(check_chain(s, 0.1, bad), ConfigError);
}

TEST(CheckChain, CheckNames) {
  EXPECT_STREQ(to_string(ChainCheck::kBaseIntegral), "base-integral");
  EXPECT_STREQ(to_string(ChainCheck::kFirstOrderPointwise), "first-order-pointwise");
  EXPECT_STREQ(to_string(ChainCheck::kSecondOrderIntegral), "second-order-integral");
  EXPECT_STREQ(to_string(ChainCheck::kPointwise), "pointwise");
  EXPECT_STREQ(to_string(ChainCheck::kIntegral), "integral");
}

TEST(Absorption, TaylorGreenThreshold) {
  const double nu = 0.1, eps = 1.0, dt = 0.01;
  const NormSeries s = taylor_green_series(1.0, nu, 60.0, dt, 1);
  const double expected = std::log(2 * kPi * kFirstOrderAbsorptionConstant / (eps * nu)) / (2 * nu);
  EXPECT_NEAR(expected, 32.83, 0.01);
  const auto t = absorption_threshold(s, eps, nu);
  ASSERT_TRUE(t.has_value());
  EXPECT_GE(*t, expected);
  EXPECT_LT(*t, expected + dt + 1e-9);
  EXPECT_GT(absorption_margin(s, *t, eps, nu), 0.0);
  EXPECT_LT(absorption_margin(s, *t - dt, eps, nu), 0.0);
  EXPECT_FALSE(absorption_threshold(taylor_green_series(1.0, nu, 10.0, dt, 1), eps, nu).has_value());
}

TEST(RegularityTime, KnownBounds) {
  EXPECT_EQ(regularity_time_bound(2, 0.1, 5.0), 0.0);
  EXPECT_NEAR(regularity_time_bound(3, 0.5, 2.0), 32.0 * 16.0, 1e-9);
  EXPECT_NEAR(regularity_time_bound(4, 0.5, 2.0), 8.0 * 4.0, 1e-12);
  EXPECT_THROW(regularity_time_bound(5, 0.5, 2.0), DomainError);
}

TEST(NormSeriesCsv, RoundTripsBitExactly) {
  const RadialProfile p = profile(0.5, 3);
  const NormSeries h = heat_series(p, 0.3, heat_sample_times(3.0), 3);
  std::stringstream buf;
  write_norms_csv(buf, h);
  const std::string text = buf.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,m0,m1,m2,m3");
  const NormSeries back = read_norms_csv(buf);
  EXPECT_EQ(back.times, h.times);
  EXPECT_EQ(back.norms, h.norms);
}

TEST(NormSeriesCsv, ReportsLineNumbers) {
  std::stringstream bad("t,m0,m1\n0,1,2\n0.5,1\n");
  try {
    read_norms_csv(bad);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::stringstream unordered("t,m0,m1\n1,1,2\n0.5,1,1\n");
  EXPECT_THROW(read_norms_csv(unordered), ConfigError);
  NormSeries s;
  s.append(0.0, {1.0, 2.0});
  EXPECT_THROW(s.append(0.0, {1.0, 2.0}), ConfigError);
  EXPECT_THROW(s.append(1.0, {1.0}), ConfigError);
}

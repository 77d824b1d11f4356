#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nsdecay/chain_verifier.hpp"
#include "nsdecay/errors.hpp"
#include "nsdecay/initial_data.hpp"
#include "nsdecay/snapshot_io.hpp"
#include "nsdecay/solver.hpp"
#include "nsdecay/spectral_ops.hpp"
#include "nsdecay/transform.hpp"
#include "oracles.hpp"

using namespace nsdecay;
using nsdecay::testing::sample_2d;
using nsdecay::testing::taylor_green_norm;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec box(int N, double nu, int n = 2) {
  GridSpec g;
  g.dimension = n;
  g.resolution = N;
  g.viscosity = nu;
  return g;
}

SolverConfig config(double dt, double T, int m_max = 1) {
  SolverConfig c;
  c.dt = dt;
  c.horizon = T;
  c.m_max = m_max;
  return c;
}

// Re sum_k conj(u_k) . N_k: the energy input of the projected convective term.
double energy_transfer(const SpectralField& u, const SpectralField& N) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.data().size(); ++i) s += (std::conj(u.data()[i]) * N.data()[i]).real();
  return s;
}

}  // namespace

TEST(TaylorGreen, NormsAndScaling) {
  const GridSpec g = box(16, 0.1);
  EXPECT_NEAR(seminorm(taylor_green(g, 1.0), 0), kPi * std::numbers::sqrt2, 1e-14);
  EXPECT_EQ(taylor_green(g, 0.0).max_abs(), 0.0);
  EXPECT_NEAR(seminorm(taylor_green(g, 2.0), 0), 2.0 * kPi * std::numbers::sqrt2, 1e-13);
  EXPECT_LE(divergence_max(taylor_green(g, 1.0)), 1e-14);
}

TEST(TaylorGreen, MatchesPhysicalSpaceDefinition) {
  const GridSpec g = box(16, 0.1);
  const PhysicalField u = inverse_transform(taylor_green(g, 1.5));
  const PhysicalField ref = sample_2d(g, [](double x, double y) {
    return std::pair{1.5 * std::cos(x) * std::sin(y), -1.5 * std::sin(x) * std::cos(y)};
  });
  for (std::size_t i = 0; i < u.values().size(); ++i) EXPECT_NEAR(u.values()[i], ref.values()[i], 1e-14);
}

TEST(TaylorGreen, RejectsWrongGeometry) {
  EXPECT_THROW(taylor_green(box(16, 0.1, 3), 1.0), ConfigError);
  GridSpec g = box(16, 0.1);
  g.box_length = 1.0;
  EXPECT_THROW(taylor_green(g, 1.0), ConfigError);
}

TEST(RandomField, IsRealSolenoidalZeroMeanAndNormalized) {
  for (int n : {2, 3}) {
    const GridSpec g = box(n == 2 ? 32 : 16, 0.05, n);
    RandomFieldSpec spec;
    spec.seed = 99;
    spec.l2_norm = 2.5;
    const SpectralField u = random_solenoidal(g, spec);
    EXPECT_NEAR(seminorm(u, 0), 2.5, 1e-13);
    EXPECT_LE(divergence_max(u), 1e-13);
    EXPECT_LE(hermitian_defect(u), 1e-16);
    EXPECT_EQ(std::abs(u.at(0, 0)), 0.0);
    for_each_mode(g, [&](std::size_t flat, const LatticeVector& z) {
      double r2 = 0;
      for (int d = 0; d < n; ++d) r2 += z[d] * z[d];
      if (r2 > 16.0 + 1e-9) EXPECT_EQ(std::abs(u.at(0, flat)), 0.0);
    });
  }
}

TEST(RandomField, SameSeedSameFieldAcrossResolutions) {
  RandomFieldSpec spec;
  spec.seed = 3;
  const SpectralField a = random_solenoidal(box(16, 0.1), spec);
  const SpectralField b = random_solenoidal(box(32, 0.1), spec);
  const GridSpec ga = a.grid(), gb = b.grid();
  for (const LatticeVector z : {LatticeVector{1, 2, 0}, LatticeVector{-3, 1, 0}, LatticeVector{0, 4, 0}}) {
    EXPECT_EQ(a.at(0, flat_index(ga, z)), b.at(0, flat_index(gb, z)));
  }
  spec.shell_max = 9.0;
  EXPECT_THROW(random_solenoidal(box(16, 0.1), spec), ConfigError);
}

TEST(NonlinearTerm, VanishesForTaylorGreenAndZero) {
  const GridSpec g = box(32, 0.1);
  EXPECT_LE(nonlinear_term(taylor_green(g, 1.0)).max_abs(), 1e-12);
  EXPECT_EQ(nonlinear_term(SpectralField(g)).max_abs(), 0.0);
}

TEST(NonlinearTerm, TwoModeConvolutionMatchesHandComputation) {
  // u = (sin y, sin 2x): (u.grad)u = (sin 2x cos y, 2 sin y cos 2x)
  //   = sin(2x+y) (1/2, 1) + sin(2x-y) (1/2, -1).
  // Projecting out k = (2, +-1) leaves -P[(u.grad)u] =
  //   (0.3, -0.6) sin(2x+y) + (0.3, 0.6) sin(2x-y).
  const GridSpec g = box(16, 0.1);
  const SpectralField u = forward_transform(
      sample_2d(g, [](double x, double y) { return std::pair{std::sin(y), std::sin(2 * x)}; }));
  const PhysicalField N = inverse_transform(nonlinear_term(u));
  const PhysicalField expected = sample_2d(g, [](double x, double y) {
    const double p = std::sin(2 * x + y), q = std::sin(2 * x - y);
    return std::pair{0.3 * p + 0.3 * q, -0.6 * p + 0.6 * q};
  });
  for (std::size_t i = 0; i < N.values().size(); ++i) {
    EXPECT_NEAR(N.values()[i], expected.values()[i], 1e-14);
  }
}

TEST(NonlinearTerm, IsSolenoidalAndConservesEnergy) {
  for (int n : {2, 3}) {
    const GridSpec g = box(n == 2 ? 32 : 16, 0.05, n);
    RandomFieldSpec spec;
    spec.seed = 17;
    spec.l2_norm = 3.0;
    const SpectralField u = random_solenoidal(g, spec);
    const SpectralField N = nonlinear_term(u);
    EXPECT_GT(N.max_abs(), 1e-3);
    EXPECT_LE(divergence_max(N), 1e-12);
    EXPECT_LE(hermitian_defect(N), 1e-14);
    EXPECT_NEAR(energy_transfer(u, N), 0.0, 1e-13) << "n=" << n;
  }
}

TEST(Step, LinearSingleModeDecaysByExactFactor) {
  const GridSpec g = box(16, 0.3);
  SpectralField u(g);
  // u = (0, cos x) is solenoidal with |k| = 1.
  u.at(1, flat_index(g, {1, 0, 0})) = 0.5;
  u.at(1, flat_index(g, {-1, 0, 0})) = 0.5;
  SolverConfig cfg = config(0.01, 1.0);
  cfg.nonlinear = false;
  const StateSnapshot next = step({0.0, u}, cfg);
  EXPECT_DOUBLE_EQ(next.time, 0.01);
  EXPECT_NEAR(next.field.at(1, flat_index(g, {1, 0, 0})).real(), 0.5 * std::exp(-0.3 * 0.01), 1e-16);
}

TEST(Step, TaylorGreenOneStepRatio) {
  const GridSpec g = box(32, 0.1);
  const SpectralField u = taylor_green(g, 1.0);
  const StateSnapshot next = step({0.0, u}, config(1e-3, 1.0));
  EXPECT_NEAR(seminorm(next.field, 0) / seminorm(u, 0), std::exp(-2 * 0.1 * 1e-3), 1e-10);
  EXPECT_LE(divergence_max(next.field), 1e-12);
}

TEST(Step, ZeroStaysZeroAndNaNIsBlowUp) {
  const GridSpec g = box(16, 0.1);
  EXPECT_EQ(step({0.0, SpectralField(g)}, config(1e-3, 1.0)).field.max_abs(), 0.0);
  SpectralField bad = taylor_green(g, 1.0);
  bad.at(0, flat_index(g, {1, 1, 0})) = std::numeric_limits<double>::quiet_NaN();
  try {
    step({2.0, bad}, config(1e-3, 1.0));
    FAIL() << "expected BlowUpError";
  } catch (const BlowUpError& e) {
    EXPECT_NEAR(e.time_reached(), 2.001, 1e-12);
  }
}

TEST(Simulate, TaylorGreenMatchesExactDecay) {
  const GridSpec g = box(64, 0.1);
  const SimulationResult r = simulate(taylor_green(g, 1.0), config(1e-3, 1.0, 2));
  ASSERT_EQ(r.series.size(), 1001u);
  EXPECT_DOUBLE_EQ(r.series.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(r.series.times.back(), 1.0);
  const double exact = kPi * std::numbers::sqrt2 * std::exp(-0.2);
  EXPECT_NEAR(r.series.norms.back()[0], exact, 1e-6 * exact);
  EXPECT_NEAR(r.series.norms.back()[2], taylor_green_norm(1.0, 0.1, 1.0, 2), 1e-12);
  for (double d : r.divergence) EXPECT_LE(d, 1e-12);
}

TEST(Simulate, ZeroInitialDataGivesZeroSeries) {
  const SimulationResult r = simulate(SpectralField(box(16, 0.1)), config(0.1, 1.0));
  for (const auto& row : r.series.norms) {
    for (double v : row) EXPECT_EQ(v, 0.0);
  }
}

TEST(Simulate, RecordsStrideAndPartialFinalStep) {
  SolverConfig cfg = config(0.3, 1.0);
  cfg.record_stride = 2;
  const SimulationResult r = simulate(taylor_green(box(16, 0.1), 0.1), cfg);
  const std::vector<double> expected{0.0, 0.6, 1.0};
  ASSERT_EQ(r.series.times.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(r.series.times[i], expected[i], 1e-15);
  EXPECT_NEAR(r.series.norms.back()[0], taylor_green_norm(0.1, 0.1, 1.0, 0), 1e-13);
}

TEST(Simulate, RandomRunDissipatesEnergyAndSatisfiesEnergyBalance) {
  const GridSpec g = box(64, 0.05);
  RandomFieldSpec spec;
  spec.seed = 2024;
  spec.l2_norm = 2.0;
  const SpectralField u0 = random_solenoidal(g, spec);
  const SimulationResult r = simulate(u0, config(1e-3, 1.0));
  for (std::size_t i = 1; i < r.series.size(); ++i) {
    EXPECT_LT(r.series.norms[i][0], r.series.norms[i - 1][0]);
  }
  for (double d : r.divergence) EXPECT_LE(d, 1e-12);
  const double e0 = r.series.norms.front()[0] * r.series.norms.front()[0];
  const double residual = energy_inequality_check(r.series, g.viscosity, 0.0, 1.0);
  // Trapezoid error in the dissipation integral dominates: O(dt^2).
  EXPECT_LE(std::abs(residual), 1e-6 * e0);
}

TEST(Simulate, LinearRegimeMatchesModeSum) {
  const GridSpec g = box(32, 0.07);
  RandomFieldSpec spec;
  spec.seed = 5;
  const SpectralField u0 = random_solenoidal(g, spec);
  SolverConfig cfg = config(0.05, 2.0, 3);
  cfg.nonlinear = false;
  const SimulationResult r = simulate(u0, cfg);
  const double unit = g.wavenumber_unit();
  for (std::size_t i = 0; i < r.series.size(); i += 10) {
    const double t = r.series.times[i];
    for (int m = 0; m <= 3; ++m) {
      double sum = 0.0;
      for_each_mode(g, [&](std::size_t flat, const LatticeVector& z) {
        const double k2 = unit * unit * (z[0] * z[0] + z[1] * z[1]);
        const double amp2 = std::norm(u0.at(0, flat)) + std::norm(u0.at(1, flat));
        sum += std::pow(k2, m) * amp2 * std::exp(-2.0 * g.viscosity * k2 * t);
      });
      const double expected = std::sqrt(g.box_volume() * sum);
      EXPECT_NEAR(r.series.norms[i][m], expected, 1e-12 * expected);
    }
  }
}

TEST(Simulate, FourthOrderInTimeOnNonlinearFlow) {
  const GridSpec g = box(32, 0.05);
  RandomFieldSpec spec;
  spec.seed = 7;
  spec.l2_norm = 6.0 * kPi;
  const SpectralField u0 = random_solenoidal(g, spec);
  const SpectralField ref = simulate(u0, config(2.5e-4, 0.5)).final_state.field;
  std::vector<double> err;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    err.push_back(seminorm(simulate(u0, config(dt, 0.5)).final_state.field - ref, 0));
  }
  EXPECT_NEAR(err[0] / err[1], 16.0, 3.2);
  EXPECT_NEAR(err[1] / err[2], 16.0, 3.2);
}

TEST(Simulate, ThreeDimensionalRunStaysSolenoidal) {
  const GridSpec g = box(16, 0.05, 3);
  RandomFieldSpec spec;
  spec.seed = 12;
  spec.l2_norm = 5.0;
  const SimulationResult r = simulate(random_solenoidal(g, spec), config(5e-3, 0.2, 2));
  for (double d : r.divergence) EXPECT_LE(d, 1e-12);
  for (std::size_t i = 1; i < r.series.size(); ++i) {
    EXPECT_LE(r.series.norms[i][0], r.series.norms[i - 1][0]);
  }
}

TEST(Simulate, IsDeterministic) {
  RandomFieldSpec spec;
  spec.seed = 77;
  const SpectralField u0 = random_solenoidal(box(32, 0.05), spec);
  const SimulationResult a = simulate(u0, config(1e-2, 0.5, 3));
  const SimulationResult b = simulate(u0, config(1e-2, 0.5, 3));
  EXPECT_EQ(a.series.norms, b.series.norms);
}

TEST(Simulate, RejectsInvalidInputs) {
  const GridSpec g = box(32, 0.05);
  RandomFieldSpec spec;
  spec.l2_norm = 50.0;
  EXPECT_THROW(simulate(random_solenoidal(g, spec), config(0.1, 1.0)), ConfigError);

  SpectralField mean = taylor_green(g, 1.0);
  mean.at(0, 0) = 1.0;
  EXPECT_THROW(simulate(mean, config(1e-3, 1.0)), ConfigError);

  std::vector<Complex> phi(g.points());
  phi[flat_index(g, {1, 2, 0})] = 1.0;
  phi[flat_index(g, {-1, -2, 0})] = 1.0;
  EXPECT_THROW(simulate(gradient_field(g, phi), config(1e-3, 1.0)), ConfigError);

  EXPECT_THROW(simulate(taylor_green(g, 1.0), config(1.0, 1.0)), ConfigError);
  SolverConfig c = config(1e-3, 1.0);
  c.m_max = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Snapshot, RoundTripsThroughBinaryFormat) {
  RandomFieldSpec spec;
  spec.seed = 8;
  GridSpec g = box(16, 0.025);
  g.box_length = 3.0;
  const StateSnapshot s{1.25, random_solenoidal(g, spec)};
  std::stringstream buf;
  write_snapshot(buf, s);
  EXPECT_EQ(buf.str().size(), 48u + 16u * 2u * 256u);
  const StateSnapshot back = read_snapshot(buf);
  EXPECT_EQ(back.time, 1.25);
  EXPECT_EQ(back.field.grid(), g);
  EXPECT_TRUE(std::equal(back.field.data().begin(), back.field.data().end(), s.field.data().begin()));
}

TEST(Snapshot, RejectsCorruptInput) {
  std::stringstream bad("NOTASNAPSHOT");
  EXPECT_THROW(read_snapshot(bad), StructuralError);

  std::stringstream buf;
  write_snapshot(buf, {0.0, taylor_green(box(16, 0.1), 1.0)});
  std::string truncated = buf.str().substr(0, 100);
  std::stringstream tin(truncated);
  EXPECT_THROW(read_snapshot(tin), StructuralError);
}

TEST(Simulate, KeepsRequestedSnapshots) {
  SolverConfig cfg = config(0.1, 1.0);
  cfg.snapshot_stride = 5;
  const SimulationResult r = simulate(taylor_green(box(16, 0.1), 0.5), cfg);
  ASSERT_EQ(r.snapshots.size(), 3u);
  EXPECT_NEAR(r.snapshots[1].time, 0.5, 1e-15);
  EXPECT_NEAR(seminorm(r.snapshots[2].field, 0), taylor_green_norm(0.5, 0.1, 1.0, 0), 1e-13);
}

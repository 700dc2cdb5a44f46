#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gbsolve/errors.hpp"
#include "gbsolve/gb_model.hpp"
#include "gbsolve/spectral.hpp"
#include "oracles.hpp"

namespace gbsolve {
namespace {

TEST(SolitaryParams, BoundaryAmplitudeIsStationary) {
  const SolitaryWaveParams w = params_from_amplitude(1.5);
  EXPECT_DOUBLE_EQ(w.shape, 1.0);
  EXPECT_DOUBLE_EQ(w.speed, 0.0);
}

TEST(SolitaryParams, ModerateAmplitude) {
  const SolitaryWaveParams w = params_from_amplitude(0.5, 2.0);
  EXPECT_NEAR(w.shape, 0.577350269189626, 1e-14);
  EXPECT_NEAR(w.speed, 0.816496580927726, 1e-14);
  EXPECT_EQ(w.center, 2.0);
  EXPECT_NEAR(w.amplitude, 1.5 * w.shape * w.shape, 1e-14);
  EXPECT_NEAR(w.speed, std::sqrt(1.0 - w.shape * w.shape), 1e-14);
}

TEST(SolitaryParams, RejectsOutOfRangeAmplitude) {
  EXPECT_THROW(params_from_amplitude(2.0), ParameterError);
  EXPECT_THROW(params_from_amplitude(0.0), ParameterError);
  EXPECT_THROW(params_from_amplitude(-0.1), ParameterError);
}

TEST(SolitaryWave, TroughAtCrestAndDecay) {
  const SolitaryWaveParams w = params_from_amplitude(0.5, 1.0);
  EXPECT_DOUBLE_EQ(solitary_wave(w, 1.0, 0.0), -0.5);
  EXPECT_NEAR(solitary_wave(w, 1.0 + w.speed * 2.5, 2.5), -0.5, 1e-15);
  EXPECT_LT(std::abs(solitary_wave(w, 1.0 + 40.0, 0.0)), 1e-9);
  EXPECT_LT(std::abs(solitary_wave(w, 1.0 - 40.0, 0.0)), 1e-9);
}

TEST(SolitaryWave, TimeDerivativeAgainstFiniteDifference) {
  const SolitaryWaveParams w = params_from_amplitude(0.5, -3.0);
  EXPECT_EQ(solitary_wave_dt(w, -3.0, 0.0), 0.0);
  const SolitaryWaveParams still = params_from_amplitude(1.5);
  EXPECT_EQ(solitary_wave_dt(still, 0.7, 1.3), 0.0);

  const double step = 1e-6;
  for (double x : {-5.0, -1.2, 0.4, 2.0, 6.0}) {
    for (double t : {0.0, 0.8}) {
      const double fd =
          (solitary_wave(w, x, t + step) - solitary_wave(w, x, t - step)) / (2 * step);
      EXPECT_NEAR(solitary_wave_dt(w, x, t), fd, 1e-8) << x << "," << t;
      const double fd2 = (solitary_wave_dt(w, x, t + step) - solitary_wave_dt(w, x, t - step)) /
                         (2 * step);
      EXPECT_NEAR(solitary_wave_dtt(w, x, t), fd2, 1e-8) << x << "," << t;
    }
  }
}

TEST(SolitaryWave, TranslationInvariance) {
  const SolitaryWaveParams w = params_from_amplitude(0.8, 0.3);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(rng), t = dist(rng), s = dist(rng);
    EXPECT_NEAR(solitary_wave(w, x, t), solitary_wave(w, x + w.speed * s, t + s), 1e-13);
  }
}

TEST(Nonlinearity, Examples) {
  const Grid grid(6, 0.0, 1.0);
  EXPECT_EQ(oracle::max_abs(nonlinearity(GridFunction(grid), 2).values()), 0.0);
  const GridFunction minus_one = GridFunction::sample(grid, [](double) { return -1.0; });
  const GridFunction squared = nonlinearity(minus_one, 2);
  const GridFunction cubed = nonlinearity(minus_one, 3);
  for (double v : squared.values()) EXPECT_EQ(v, 1.0);
  for (double v : cubed.values()) EXPECT_EQ(v, -1.0);
}

TEST(Nonlinearity, MatchesLoopOracle) {
  std::mt19937_64 rng(22);
  const Grid grid(20, 0.0, 1.0);
  const GridFunction f = oracle::random_function(grid, rng);
  for (int p : {2, 3, 5}) {
    const GridFunction g = nonlinearity(f, p);
    for (std::size_t i = 0; i < f.size(); ++i) {
      double expected = 1.0;
      for (int j = 0; j < p; ++j) expected *= f[i];
      EXPECT_EQ(g[i], expected) << "p=" << p;
    }
  }
  EXPECT_THROW(nonlinearity(f, 1), ParameterError);
}

TEST(SampleInitial, DefaultDomainIsQuiet) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const Grid grid(128, -40.0, 40.0);
  const InitialData data = sample_initial(w, grid);
  EXPECT_FALSE(data.warning.has_value());
  EXPECT_LT(std::abs(data.u[0]), 1e-9);
  EXPECT_LT(std::abs(data.u[data.u.size() - 1]), 1e-9);

  // The minimum sits at the node nearest x0 and equals -A to O(h^2).
  std::size_t imin = 0;
  for (std::size_t i = 0; i < data.u.size(); ++i) {
    if (data.u[i] < data.u[imin]) imin = i;
  }
  const double h = grid.spacing();
  EXPECT_LE(std::abs(grid.node(static_cast<int>(imin))), 0.5 * h + 1e-12);
  EXPECT_NEAR(data.u[imin], -0.5, 0.5 * w.shape * w.shape * h * h);
}

TEST(SampleInitial, StationaryWaveHasZeroVelocity) {
  const Grid grid(32, -40.0, 40.0);
  const InitialData data = sample_initial(params_from_amplitude(1.5), grid);
  EXPECT_EQ(oracle::max_abs(data.ut.values()), 0.0);
}

TEST(SampleInitial, WarnsWhenWaveTouchesBoundary) {
  const Grid grid(32, -5.0, 5.0);
  EXPECT_TRUE(sample_initial(params_from_amplitude(0.5), grid).warning.has_value());
}

TEST(GBProblem, ValidatesPowerAndGrids) {
  const Grid grid(8, 0.0, 1.0);
  EXPECT_THROW(GBProblem(1, GridFunction(grid), GridFunction(grid)), ParameterError);
  EXPECT_THROW(GBProblem(2, GridFunction(grid), GridFunction(Grid(9, 0.0, 1.0))),
               DimensionError);
  const GBProblem ok(3, GridFunction(grid), GridFunction(grid));
  EXPECT_EQ(ok.power, 3);
  EXPECT_FALSE(ok.exact.has_value());
}

TEST(Residual, SolitaryWaveSolvesTheEquation) {
  const Grid grid(512, -40.0, 40.0);
  EXPECT_LE(norm2(solitary_residual(params_from_amplitude(0.5), grid, 0.0)), 1e-6);
  // Crest re-centred at t = 1: the tails match again across the period.
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const SolitaryWaveParams shifted = params_from_amplitude(0.5, -w.speed);
  EXPECT_LE(norm2(solitary_residual(shifted, grid, 1.0)), 1e-6);
}

TEST(Residual, OffCentreWaveShowsPeriodizationJump) {
  // Unequal tails leave a ~1e-9 jump at the period boundary, which D^4
  // amplifies by roughly k_max^4; the residual grows with N, not shrinks.
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const double coarse = norm2(solitary_residual(w, Grid(128, -40.0, 40.0), 4.0));
  const double fine = norm2(solitary_residual(w, Grid(512, -40.0, 40.0), 4.0));
  EXPECT_GT(fine, coarse);
  EXPECT_LT(fine, 1e-4);
}

TEST(Residual, WrongPowerIsNotASolution) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const Grid grid(256, -40.0, 40.0);
  EXPECT_GT(norm2(solitary_residual(w, grid, 0.0, 3)), 1e-3);
}

}  // namespace
}  // namespace gbsolve

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gbsolve/diagnostics.hpp"
#include "gbsolve/errors.hpp"
#include "gbsolve/gb_model.hpp"
#include "gbsolve/spectral.hpp"
#include "gbsolve/stepper.hpp"
#include "oracles.hpp"

namespace gbsolve {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SchemeState make_state(GridFunction u, GridFunction psi, GridFunction u_prev) {
  return SchemeState{0, 0.0, std::move(u), std::move(psi), std::move(u_prev)};
}

double final_h2_error(Scheme scheme, double dt, BootstrapMode mode = BootstrapMode::exact) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const GBProblem problem = solitary_problem(w, Grid(512, -40.0, 40.0));
  RunOptions options;
  options.bootstrap = mode;
  const RunResult r = run(problem, scheme, dt, 4.0, options);
  EXPECT_FALSE(r.diverged);
  return error_norms(r.final_state, w).err_u_h2;
}

TEST(ImplicitDiagonal, Symbol) {
  const Grid grid(8, 0.0, kTwoPi);
  const ImplicitDiagonal d = build_implicit_diagonal(grid, 1.0);
  EXPECT_DOUBLE_EQ(d(0), 2.0);
  EXPECT_DOUBLE_EQ(d(1), 3.0);
  EXPECT_DOUBLE_EQ(d(-1), 3.0);
  EXPECT_DOUBLE_EQ(build_implicit_diagonal(grid, 0.1)(0), 2.0 / 0.01);
  EXPECT_THROW(build_implicit_diagonal(grid, 0.0), ParameterError);
  EXPECT_THROW(build_implicit_diagonal(grid, -1.0), ParameterError);
}

TEST(ImplicitDiagonal, PositiveForAnyResolution) {
  for (int n : {4, 64, 1024}) {
    for (double dt : {1e-6, 1e-2, 1.0, 100.0}) {
      const ImplicitDiagonal d = build_implicit_diagonal(Grid(n, -40.0, 40.0), dt);
      for (double v : d.lambda) EXPECT_GT(v, 0.0);
    }
  }
}

TEST(StepProposed, ZeroIsAFixedPoint) {
  const Grid grid(16, -40.0, 40.0);
  for (int p : {2, 3, 4}) {
    const SchemeState next =
        step_proposed(make_state(GridFunction(grid), GridFunction(grid), GridFunction(grid)), 0.1,
                      p);
    EXPECT_EQ(oracle::max_abs(next.u_curr.values()), 0.0);
    EXPECT_EQ(oracle::max_abs(next.psi_curr.values()), 0.0);
    EXPECT_EQ(next.step_index, 1);
    EXPECT_DOUBLE_EQ(next.time, 0.1);
  }
}

TEST(StepProposed, NonFiniteResultSignalsBlowUp) {
  const Grid grid(8, 0.0, 1.0);
  GridFunction u = GridFunction::sample(grid, [](double) { return 1e200; });
  try {
    step_proposed(make_state(u, GridFunction(grid), u), 0.1, 2);
    FAIL() << "expected BlowUpError";
  } catch (const BlowUpError& e) {
    EXPECT_EQ(e.step_index(), 1);
  }
}

// Phase angle of a single cosine mode after one step, from (u, psi/omega).
double one_step_phase_error(double dt) {
  const Grid grid(8, 0.0, kTwoPi);
  const double k = 1.0;
  const double omega = std::sqrt(k * k * k * k + k * k);
  const double eps = 1e-10;
  auto mode = [&](double scale) {
    return GridFunction::sample(grid, [&](double x) { return scale * std::cos(k * x); });
  };
  const SchemeState next =
      step_proposed(make_state(mode(eps), GridFunction(grid), mode(eps * std::cos(omega * dt))),
                    dt, 2);
  const double a = forward(next.u_curr)(1).real() * 2.0 / eps;
  const double b = forward(next.psi_curr)(1).real() * 2.0 / eps;
  const double phase = std::atan2(-b / omega, a);
  return std::abs(phase - omega * dt);
}

TEST(StepProposed, LinearPhaseErrorIsThirdOrderPerStep) {
  const double e1 = one_step_phase_error(0.1);
  const double e2 = one_step_phase_error(0.05);
  EXPECT_GT(e1, 0.0);
  EXPECT_NEAR(e1 / e2, 8.0, 0.5);
}

TEST(StepProposed, LinearUpdateIsNonAmplifying) {
  const Grid grid(16, -40.0, 40.0);
  for (double dt : {1e-3, 0.04, 1.0, 10.0}) {
    ProposedStepper stepper(grid, dt, 2);
    for (int l : {1, 3, 8, 16}) {
      const double k = grid.wavenumber(l);
      const double eps = 1e-6;
      const GridFunction cosine =
          GridFunction::sample(grid, [&](double x) { return eps * std::cos(k * (x - grid.x_left())); });
      // Columns of the 2x2 update on (u_hat_l, psi_hat_l). The square of a
      // single mode feeds only modes 0 and 2l, so mode l sees the linear part.
      double m[2][2];
      for (int col = 0; col < 2; ++col) {
        SchemeState s = col == 0 ? make_state(cosine, GridFunction(grid), cosine)
                                 : make_state(GridFunction(grid), cosine, GridFunction(grid));
        ASSERT_TRUE(stepper.advance(s));
        m[0][col] = forward(s.u_curr)(l).real() * 2.0 / eps;
        m[1][col] = forward(s.psi_curr)(l).real() * 2.0 / eps;
      }
      const double trace = m[0][0] + m[1][1];
      const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
      const double disc = trace * trace / 4.0 - det;
      double radius;
      if (disc >= 0) {
        radius = std::max(std::abs(trace / 2 + std::sqrt(disc)), std::abs(trace / 2 - std::sqrt(disc)));
      } else {
        radius = std::sqrt(det);
      }
      EXPECT_LE(radius, 1.0 + 1e-12) << "dt=" << dt << " l=" << l;
    }
  }
}

TEST(StepProposed, CouplingIdentityEveryStep) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const Grid grid(64, -40.0, 40.0);
  const double dt = 0.01;
  SchemeState s = bootstrap(solitary_problem(w, grid), dt, BootstrapMode::exact);
  ProposedStepper stepper(grid, dt, 2);
  for (int n = 0; n < 200; ++n) {
    const GridFunction u_old = s.u_curr;
    const GridFunction psi_old = s.psi_curr;
    ASSERT_TRUE(stepper.advance(s));
    GridFunction lhs = s.u_curr - u_old;
    lhs *= 1.0 / dt;
    GridFunction rhs = s.psi_curr + psi_old;
    rhs *= 0.5;
    EXPECT_LE(norm2(lhs - rhs), 1e-10 * (norm2(s.psi_curr) + 1.0)) << "step " << n;
    EXPECT_EQ(oracle::max_abs_diff(s.u_prev.values(), u_old.values()), 0.0);
  }
  EXPECT_EQ(s.step_index, 200);
  EXPECT_NEAR(s.time, 2.0, 1e-12);
}

TEST(StepProposed, MassConservedWithZeroInitialVelocity) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const Grid grid(64, -40.0, 40.0);
  const GBProblem problem(2, sample_solitary_wave(w, grid, 0.0), GridFunction(grid));
  const RunResult r = run(problem, Scheme::proposed, 0.01, 10.0);
  ASSERT_FALSE(r.diverged);
  ASSERT_EQ(r.steps_requested, 1000);
  const double m0 = mass(problem.initial_u);
  for (const TraceSample& s : r.trace) EXPECT_NEAR(s.mass, m0, 1e-12 * std::abs(m0));
  EXPECT_NEAR(mass(r.final_state.u_curr), m0, 1e-12 * std::abs(m0));
}

TEST(StepProposed, SecondOrderInTime) {
  const double coarse = final_h2_error(Scheme::proposed, 4e-3);
  const double fine = final_h2_error(Scheme::proposed, 2e-3);
  EXPECT_GT(coarse / fine, 3.0);
  EXPECT_LT(coarse / fine, 5.0);
}

TEST(Bootstrap, ZeroDataBothModesAgree) {
  const Grid grid(8, 0.0, 1.0);
  const GBProblem bare(2, GridFunction(grid), GridFunction(grid));
  const SchemeState a = bootstrap(bare, 0.1, BootstrapMode::self_start);
  EXPECT_EQ(oracle::max_abs(a.u_prev.values()), 0.0);
  EXPECT_EQ(oracle::max_abs(a.psi_curr.values()), 0.0);
  EXPECT_THROW(bootstrap(bare, 0.1, BootstrapMode::exact), ConfigurationError);
}

TEST(Bootstrap, ExactModeShiftsCrestBackwards) {
  const SolitaryWaveParams w = params_from_amplitude(0.5, 1.0);
  const Grid grid(256, -40.0, 40.0);
  const double dt = 0.5;
  const SchemeState s = bootstrap(solitary_problem(w, grid), dt, BootstrapMode::exact);
  EXPECT_NEAR(locate_trough(s.u_prev), 1.0 - w.speed * dt, 0.05 * grid.spacing());
  EXPECT_NEAR(locate_trough(s.u_curr), 1.0, 0.05 * grid.spacing());
  const GridFunction v0 = sample_solitary_wave_dt(w, grid, 0.0);
  EXPECT_EQ(oracle::max_abs_diff(s.psi_curr.values(), v0.values()), 0.0);
  EXPECT_EQ(s.step_index, 0);
}

TEST(Bootstrap, SelfStartKeepsGlobalAccuracy) {
  const double exact = final_h2_error(Scheme::proposed, 4e-3, BootstrapMode::exact);
  const double self = final_h2_error(Scheme::proposed, 4e-3, BootstrapMode::self_start);
  EXPECT_GE(self / exact, 0.5);
  EXPECT_LE(self / exact, 2.0);
}

TEST(StepFrutos, ZeroStateAndSymbol) {
  const Grid grid(8, -40.0, 40.0);
  const FrutosState s{0, 0.0, GridFunction(grid), GridFunction(grid)};
  const FrutosState next = step_frutos(s, 0.1);
  EXPECT_EQ(oracle::max_abs(next.u_curr.values()), 0.0);
  EXPECT_EQ(next.step_index, 1);
  const FrutosStepper stepper(grid, 0.1);
  EXPECT_DOUBLE_EQ(stepper.diagonal(0), 100.0);
  const double k = grid.wavenumber(3);
  EXPECT_DOUBLE_EQ(stepper.diagonal(3), 100.0 + k * k * k * k / 4.0);
}

TEST(StepFrutos, OnlyQuadraticNonlinearity) {
  const Grid grid(8, -40.0, 40.0);
  const GBProblem cubic(3, sample_solitary_wave(params_from_amplitude(0.5), grid, 0.0),
                        GridFunction(grid), params_from_amplitude(0.5));
  EXPECT_THROW(bootstrap_frutos(cubic, 0.1), ConfigurationError);
  EXPECT_THROW(run(cubic, Scheme::frutos, 0.1, 1.0), ConfigurationError);
}

TEST(StepFrutos, ComparableAccuracyWhenStable) {
  const double proposed = final_h2_error(Scheme::proposed, 4e-3);
  const double frutos = final_h2_error(Scheme::frutos, 4e-3);
  EXPECT_LT(frutos, 10.0 * proposed);
  EXPECT_LT(proposed, 10.0 * frutos);
}

TEST(StepCount, RoundsAndValidates) {
  EXPECT_EQ(step_count(4.0, 4e-3), 1000);
  EXPECT_EQ(step_count(4.0, 0.04), 100);
  EXPECT_EQ(step_count(0.0, 0.1), 0);
  EXPECT_THROW(step_count(1.0, 0.3), ConfigurationError);
  EXPECT_THROW(step_count(-1.0, 0.1), ConfigurationError);
  EXPECT_THROW(step_count(1.0, 0.0), ParameterError);
}

TEST(Run, ZeroStepsReturnsInitialState) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const GBProblem problem = solitary_problem(w, Grid(32, -40.0, 40.0));
  const RunResult r = run(problem, Scheme::proposed, 0.1, 0.0);
  EXPECT_EQ(r.steps_requested, 0);
  EXPECT_EQ(r.final_state.step_index, 0);
  EXPECT_EQ(oracle::max_abs_diff(r.final_state.u_curr.values(), problem.initial_u.values()), 0.0);
}

TEST(Run, ZeroDataRecordsZeroNorms) {
  const Grid grid(16, -40.0, 40.0);
  const GBProblem problem(2, GridFunction(grid), GridFunction(grid));
  long calls = 0;
  RunOptions options;
  options.stride = 10;
  options.observers.push_back([&](const SchemeState&) { ++calls; });
  const RunResult r = run(problem, Scheme::proposed, 1e-3, 1.0, options);
  EXPECT_FALSE(r.diverged);
  EXPECT_EQ(r.steps_requested, 1000);
  EXPECT_GE(calls, 100);
  EXPECT_EQ(static_cast<long>(r.trace.size()), calls);
  for (const TraceSample& s : r.trace) {
    EXPECT_EQ(s.norm_u, 0.0);
    EXPECT_EQ(s.norm_psi, 0.0);
  }
}

TEST(Run, CrestTravelsAtWaveSpeed) {
  const SolitaryWaveParams w = params_from_amplitude(0.5);
  const Grid grid(512, -40.0, 40.0);
  RunOptions options;
  options.bootstrap = BootstrapMode::exact;
  const RunResult r = run(solitary_problem(w, grid), Scheme::proposed, 4e-3, 4.0, options);
  ASSERT_FALSE(r.diverged);
  EXPECT_NEAR(w.speed * 4.0, 3.266, 1e-3);
  EXPECT_NEAR(locate_trough(r.final_state.u_curr), w.speed * 4.0, grid.spacing());
}

TEST(Run, FlagsDivergenceInsteadOfThrowing) {
  const Grid grid(16, -40.0, 40.0);
  const GBProblem problem(2, GridFunction::sample(grid, [](double) { return 1e300; }),
                          GridFunction(grid));
  const RunResult r = run(problem, Scheme::proposed, 0.1, 1.0);
  EXPECT_TRUE(r.diverged);
  ASSERT_TRUE(r.diverged_at_step.has_value());
  EXPECT_GE(*r.diverged_at_step, 1);
}

}  // namespace
}  // namespace gbsolve

#include <benchmark/benchmark.h>

#include <random>

#include "gbsolve/gb_model.hpp"
#include "gbsolve/spectral.hpp"
#include "gbsolve/stepper.hpp"

namespace {

using namespace gbsolve;

GridFunction noise(const Grid& grid) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return GridFunction::sample(grid, [&](double) { return dist(rng); });
}

void BM_ForwardInverse(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)), -40.0, 40.0);
  const GridFunction f = noise(grid);
  for (auto _ : state) {
    GridFunction back = inverse(forward(f));
    benchmark::DoNotOptimize(back.values().data());
  }
}
BENCHMARK(BM_ForwardInverse)->Arg(128)->Arg(512)->Arg(2048);

void BM_FourthDerivative(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)), -40.0, 40.0);
  const GridFunction f = noise(grid);
  for (auto _ : state) {
    GridFunction d = derivative(f, 4);
    benchmark::DoNotOptimize(d.values().data());
  }
}
BENCHMARK(BM_FourthDerivative)->Arg(128)->Arg(512);

void BM_ProposedStep(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)), -40.0, 40.0);
  const double dt = 4e-3;
  SchemeState s = bootstrap(solitary_problem(params_from_amplitude(0.5), grid), dt,
                            BootstrapMode::exact);
  ProposedStepper stepper(grid, dt, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(s));
  }
}
BENCHMARK(BM_ProposedStep)->Arg(128)->Arg(512);

void BM_ReferenceStep(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)), -40.0, 40.0);
  const double dt = 4e-3;
  FrutosState s = bootstrap_frutos(solitary_problem(params_from_amplitude(0.5), grid), dt);
  FrutosStepper stepper(grid, dt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(s));
  }
}
BENCHMARK(BM_ReferenceStep)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();

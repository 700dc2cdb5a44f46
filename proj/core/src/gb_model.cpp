#include "gbsolve/gb_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbsolve/errors.hpp"
#include "gbsolve/spectral.hpp"

namespace gbsolve {

namespace {

double phase(const SolitaryWaveParams& w, double x, double t) {
  return 0.5 * w.shape * (x - w.center - w.speed * t);
}

double sech2(double theta) {
  const double s = 1.0 / std::cosh(theta);
  return s * s;
}

void require_power(int power) {
  if (power < 2) {
    throw ParameterError("nonlinearity power must be >= 2, got " + std::to_string(power));
  }
}

}  // namespace

SolitaryWaveParams params_from_amplitude(double amplitude, double center) {
  if (!(amplitude > 0.0 && amplitude <= 1.5)) {
    throw ParameterError("solitary-wave amplitude must lie in (0, 3/2], got " +
                         std::to_string(amplitude));
  }
  const double shape = std::sqrt(2.0 * amplitude / 3.0);
  const double speed = std::sqrt(std::max(0.0, 1.0 - shape * shape));
  return {amplitude, shape, speed, center};
}

double solitary_wave(const SolitaryWaveParams& w, double x, double t) {
  return -w.amplitude * sech2(phase(w, x, t));
}

double solitary_wave_dt(const SolitaryWaveParams& w, double x, double t) {
  const double theta = phase(w, x, t);
  return -w.amplitude * w.shape * w.speed * sech2(theta) * std::tanh(theta);
}

double solitary_wave_dtt(const SolitaryWaveParams& w, double x, double t) {
  // d^2/dtheta^2 sech^2 = 4 S - 6 S^2 with S = sech^2, dtheta/dt = -c0 P / 2.
  const double s = sech2(phase(w, x, t));
  const double rate = 0.5 * w.shape * w.speed;
  return -w.amplitude * rate * rate * (4.0 * s - 6.0 * s * s);
}

GridFunction sample_solitary_wave(const SolitaryWaveParams& w, const Grid& grid, double t) {
  return GridFunction::sample(grid, [&](double x) { return solitary_wave(w, x, t); });
}

GridFunction sample_solitary_wave_dt(const SolitaryWaveParams& w, const Grid& grid,
                                     double t) {
  return GridFunction::sample(grid, [&](double x) { return solitary_wave_dt(w, x, t); });
}

GridFunction nonlinearity(const GridFunction& f, int power) {
  require_power(power);
  GridFunction out = f;
  for (double& v : out.values()) {
    const double base = v;
    double acc = base;
    for (int j = 1; j < power; ++j) acc *= base;
    v = acc;
  }
  return out;
}

InitialData sample_initial(const SolitaryWaveParams& w, const Grid& grid) {
  InitialData data{sample_solitary_wave(w, grid, 0.0), sample_solitary_wave_dt(w, grid, 0.0),
                   std::nullopt};
  const double edge = std::max(std::abs(solitary_wave(w, grid.x_left(), 0.0)),
                               std::abs(solitary_wave(w, grid.x_right(), 0.0)));
  if (edge >= 1e-8 * w.amplitude) {
    data.warning = "solitary wave is not negligible at the domain boundary (|u| = " +
                   std::to_string(edge) + "); periodization error will be visible";
  }
  return data;
}

GBProblem::GBProblem(int p, GridFunction u0, GridFunction v0,
                     std::optional<SolitaryWaveParams> exact_solution)
    : power(p),
      grid(u0.grid()),
      initial_u(std::move(u0)),
      initial_ut(std::move(v0)),
      exact(exact_solution) {
  require_power(power);
  require_same_grid(initial_u, initial_ut);
}

GBProblem solitary_problem(const SolitaryWaveParams& w, const Grid& grid, int power) {
  InitialData data = sample_initial(w, grid);
  return GBProblem(power, std::move(data.u), std::move(data.ut), w);
}

GridFunction solitary_residual(const SolitaryWaveParams& w, const Grid& grid, double t,
                               int power) {
  const GridFunction u = sample_solitary_wave(w, grid, t);
  GridFunction rhs = derivative(u, 2) - derivative(u, 4);
  rhs += derivative(nonlinearity(u, power), 2);
  GridFunction utt =
      GridFunction::sample(grid, [&](double x) { return solitary_wave_dtt(w, x, t); });
  return utt - rhs;
}

}  // namespace gbsolve

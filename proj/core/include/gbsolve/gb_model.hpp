#pragma once

// The "good" Boussinesq equation  u_tt = -u_xxxx + u_xx + (u^p)_xx  and its
// solitary-wave solution
//     u_e(x, t) = -A sech^2( (P/2) (x - x0 - c0 t) ),
//     A = 3 P^2 / 2,  c0 = sqrt(1 - P^2),  0 < P <= 1.

#include <optional>
#include <string>

#include "gbsolve/grid.hpp"

namespace gbsolve {

struct SolitaryWaveParams {
  double amplitude;  // A
  double shape;      // P
  double speed;      // c0
  double center;     // x0, crest position at t = 0
};

/// Throws ParameterError unless 0 < A <= 3/2.
SolitaryWaveParams params_from_amplitude(double amplitude, double center = 0.0);

double solitary_wave(const SolitaryWaveParams& w, double x, double t);
double solitary_wave_dt(const SolitaryWaveParams& w, double x, double t);
/// Second time derivative, used for residual checks.
double solitary_wave_dtt(const SolitaryWaveParams& w, double x, double t);

GridFunction sample_solitary_wave(const SolitaryWaveParams& w, const Grid& grid, double t);
GridFunction sample_solitary_wave_dt(const SolitaryWaveParams& w, const Grid& grid, double t);

/// Pointwise f_i^p.
GridFunction nonlinearity(const GridFunction& f, int power);

struct InitialData {
  GridFunction u;
  GridFunction ut;
  /// Set when the wave is not negligible at the domain boundary.
  std::optional<std::string> warning;
};

/// (u0, v0) sampled from the solitary wave at t = 0.
InitialData sample_initial(const SolitaryWaveParams& w, const Grid& grid);

/// Initial-value problem on a periodic grid. `exact` is attached when the
/// data came from a solitary wave.
struct GBProblem {
  GBProblem(int power, GridFunction initial_u, GridFunction initial_ut,
            std::optional<SolitaryWaveParams> exact = std::nullopt);

  int power;
  Grid grid;
  GridFunction initial_u;
  GridFunction initial_ut;
  std::optional<SolitaryWaveParams> exact;
};

GBProblem solitary_problem(const SolitaryWaveParams& w, const Grid& grid, int power = 2);

/// Pointwise residual u_tt - (-D^4 u + D^2 u + D^2 u^p) of the sampled
/// solitary wave at time t, with u_tt taken analytically.
GridFunction solitary_residual(const SolitaryWaveParams& w, const Grid& grid, double t,
                               int power = 2);

}  // namespace gbsolve

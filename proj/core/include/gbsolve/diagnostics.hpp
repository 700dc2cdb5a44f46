#pragma once

#include "gbsolve/gb_model.hpp"
#include "gbsolve/grid.hpp"
#include "gbsolve/stepper.hpp"

namespace gbsolve {

/// Errors of a numerical state against the solitary wave at state.time.
/// psi_e is the analytic u_t of the exact solution.
struct ErrorRecord {
  double time;
  double err_psi_l2;  // ||psi - psi_e||_2
  double err_u_h2;    // ||D^2 (u - u_e)||_2
  double err_u_l2;    // ||u - u_e||_2
  double mass;        // h * sum u_i
  double energy;      // modified error energy
};

ErrorRecord error_norms(const SchemeState& state, const SolitaryWaveParams& params);

/// Discrete mass h * sum_i u_i. Note the weight h, not 1/(2N+1).
double mass(const GridFunction& u);
double mass(const SchemeState& state);

/// 1/2 (||psi_err||^2 + ||D^2 u_err||^2 + ||D u_err||^2).
double modified_energy(const GridFunction& u_err, const GridFunction& psi_err);

/// x-position of the minimum of u, refined by a parabola through the
/// smallest node and its two periodic neighbours.
double locate_trough(const GridFunction& u);

}  // namespace gbsolve

#include "gbsolve/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "gbsolve/spectral.hpp"

namespace gbsolve {

ErrorRecord error_norms(const SchemeState& state, const SolitaryWaveParams& params) {
  const Grid& grid = state.u_curr.grid();
  const double t = state.time;
  const GridFunction u_err = state.u_curr - sample_solitary_wave(params, grid, t);
  const GridFunction psi_err = state.psi_curr - sample_solitary_wave_dt(params, grid, t);
  return ErrorRecord{
      t,
      norm2(psi_err),
      norm2(derivative(u_err, 2)),
      norm2(u_err),
      mass(state.u_curr),
      modified_energy(u_err, psi_err),
  };
}

double mass(const GridFunction& u) {
  double sum = 0.0;
  for (double v : u.values()) sum += v;
  return u.grid().spacing() * sum;
}

double mass(const SchemeState& state) { return mass(state.u_curr); }

double modified_energy(const GridFunction& u_err, const GridFunction& psi_err) {
  require_same_grid(u_err, psi_err);
  const double psi2 = inner_product(psi_err, psi_err);
  const GridFunction d1 = derivative(u_err, 1);
  const GridFunction d2 = derivative(u_err, 2);
  return 0.5 * (psi2 + inner_product(d2, d2) + inner_product(d1, d1));
}

double locate_trough(const GridFunction& u) {
  const auto v = u.values();
  const auto m = static_cast<long>(v.size());
  const long i = std::distance(v.begin(), std::min_element(v.begin(), v.end()));
  const double left = v[static_cast<std::size_t>((i - 1 + m) % m)];
  const double mid = v[static_cast<std::size_t>(i)];
  const double right = v[static_cast<std::size_t>((i + 1) % m)];
  const double curvature = left - 2.0 * mid + right;
  double offset = 0.0;
  if (curvature > 0.0) offset = 0.5 * (left - right) / curvature;
  return u.grid().node(static_cast<int>(i)) + offset * u.grid().spacing();
}

}  // namespace gbsolve

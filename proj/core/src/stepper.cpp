#include "gbsolve/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gbsolve/diagnostics.hpp"
#include "gbsolve/errors.hpp"
#include "gbsolve/spectral.hpp"
#include "spectral_internal.hpp"

namespace gbsolve {

namespace {

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ParameterError("time step must be positive, got " + std::to_string(dt));
  }
}

inline double ipow(double base, int power) {
  double acc = base;
  for (int j = 1; j < power; ++j) acc *= base;
  return acc;
}

std::size_t half_size(const Grid& grid) { return static_cast<std::size_t>(grid.half_modes() + 1); }

}  // namespace

ImplicitDiagonal build_implicit_diagonal(const Grid& grid, double dt) {
  require_dt(dt);
  ImplicitDiagonal d{grid, dt, {}};
  const auto& k = grid.data().wavenumbers;
  d.lambda.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double k2 = k[i] * k[i];
    d.lambda[i] = 2.0 / (dt * dt) + 0.5 * (k2 * k2 + k2);
  }
  return d;
}

ProposedStepper::ProposedStepper(const Grid& grid, double dt, int power)
    : grid_(grid),
      dt_(dt),
      power_(power),
      diagonal_(build_implicit_diagonal(grid, dt)),
      nl_(static_cast<std::size_t>(grid.num_points())),
      u_hat_(half_size(grid)),
      psi_hat_(half_size(grid)),
      nl_hat_(half_size(grid)),
      next_u_(grid),
      next_psi_(grid) {
  if (power < 2) {
    throw ParameterError("nonlinearity power must be >= 2, got " + std::to_string(power));
  }
  const auto& k = grid.data().half_wavenumbers;
  explicit_coeff_.resize(k.size());
  inv_lambda_.resize(k.size());
  minus_k2_.resize(k.size());
  for (std::size_t l = 0; l < k.size(); ++l) {
    const double k2 = k[l] * k[l];
    const double sym = 0.5 * (k2 * k2 + k2);
    explicit_coeff_[l] = 2.0 / (dt * dt) - sym;
    inv_lambda_[l] = 1.0 / (2.0 / (dt * dt) + sym);
    minus_k2_[l] = -k2;
  }
}

bool ProposedStepper::advance(SchemeState& s) {
  const auto u = s.u_curr.values();
  const auto psi = s.psi_curr.values();
  const auto u_old = s.u_prev.values();
  const std::size_t m = u.size();

  // Adams-Bashforth extrapolation of u^p to t^{n+1/2}, in physical space.
  for (std::size_t i = 0; i < m; ++i) {
    nl_[i] = 1.5 * ipow(u[i], power_) - 0.5 * ipow(u_old[i], power_);
  }
  detail::forward_half(grid_, u, u_hat_);
  detail::forward_half(grid_, psi, psi_hat_);
  detail::forward_half(grid_, nl_, nl_hat_);

  const double two_over_dt = 2.0 / dt_;
  for (std::size_t l = 0; l < u_hat_.size(); ++l) {
    const auto rhs = minus_k2_[l] * nl_hat_[l] + explicit_coeff_[l] * u_hat_[l] +
                     two_over_dt * psi_hat_[l];
    u_hat_[l] = rhs * inv_lambda_[l];
  }
  // The mean mode decouples: psi_0 is constant and u_0 moves by dt * psi_0.
  // Writing it out avoids a round-off random walk in the mass.
  const double psi_mean = psi_hat_[0].real();
  u_hat_[0] = u_hat_[0].real() + dt_ * psi_mean;
  auto u_new = next_u_.values();
  detail::inverse_half(grid_, u_hat_, u_new);

  auto psi_new = next_psi_.values();
  bool finite = true;
  for (std::size_t i = 0; i < m; ++i) {
    psi_new[i] = two_over_dt * (u_new[i] - u[i]) - psi[i];
    finite = finite && std::isfinite(u_new[i]) && std::isfinite(psi_new[i]);
  }
  double drift = 0.0;
  for (double v : psi_new) drift += v;
  drift = drift / static_cast<double>(m) - psi_mean;
  for (double& v : psi_new) v -= drift;

  std::swap(s.u_prev, s.u_curr);   // u_prev <- u^n
  std::swap(s.u_curr, next_u_);    // u_curr <- u^{n+1}
  std::swap(s.psi_curr, next_psi_);
  ++s.step_index;
  s.time = static_cast<double>(s.step_index) * dt_;
  return finite;
}

SchemeState step_proposed(const SchemeState& state, double dt, int power) {
  ProposedStepper stepper(state.u_curr.grid(), dt, power);
  SchemeState next = state;
  if (!stepper.advance(next)) {
    throw BlowUpError(next.step_index, "proposed scheme produced non-finite values at step " +
                                           std::to_string(next.step_index));
  }
  return next;
}

FrutosStepper::FrutosStepper(const Grid& grid, double dt)
    : grid_(grid),
      dt_(dt),
      nl_(static_cast<std::size_t>(grid.num_points())),
      u_hat_(half_size(grid)),
      prev_hat_(half_size(grid)),
      nl_hat_(half_size(grid)),
      next_u_(grid) {
  require_dt(dt);
  const auto& k = grid.data().half_wavenumbers;
  a_.resize(k.size());
  b_.resize(k.size());
  minus_k2_.resize(k.size());
  const double inv_dt2 = 1.0 / (dt * dt);
  for (std::size_t l = 0; l < k.size(); ++l) {
    const double k2 = k[l] * k[l];
    a_[l] = inv_dt2 + 0.25 * k2 * k2;
    b_[l] = 2.0 * inv_dt2 - 0.5 * k2 * k2 - k2;
    minus_k2_[l] = -k2;
  }
}

double FrutosStepper::diagonal(int mode) const {
  const double k = grid_.wavenumber(mode);
  return 1.0 / (dt_ * dt_) + 0.25 * k * k * k * k;
}

bool FrutosStepper::advance(FrutosState& s) {
  const auto u = s.u_curr.values();
  for (std::size_t i = 0; i < u.size(); ++i) nl_[i] = u[i] * u[i];
  detail::forward_half(grid_, u, u_hat_);
  detail::forward_half(grid_, s.u_prev.values(), prev_hat_);
  detail::forward_half(grid_, nl_, nl_hat_);
  for (std::size_t l = 0; l < u_hat_.size(); ++l) {
    const auto rhs = b_[l] * u_hat_[l] - a_[l] * prev_hat_[l] + minus_k2_[l] * nl_hat_[l];
    u_hat_[l] = rhs / a_[l];
  }
  auto u_new = next_u_.values();
  detail::inverse_half(grid_, u_hat_, u_new);
  bool finite = true;
  for (double v : u_new) finite = finite && std::isfinite(v);

  std::swap(s.u_prev, s.u_curr);
  std::swap(s.u_curr, next_u_);
  ++s.step_index;
  s.time = static_cast<double>(s.step_index) * dt_;
  return finite;
}

FrutosState step_frutos(const FrutosState& state, double dt) {
  FrutosStepper stepper(state.u_curr.grid(), dt);
  FrutosState next = state;
  if (!stepper.advance(next)) {
    throw BlowUpError(next.step_index, "reference scheme produced non-finite values at step " +
                                           std::to_string(next.step_index));
  }
  return next;
}

SchemeState bootstrap(const GBProblem& problem, double dt, BootstrapMode mode) {
  require_dt(dt);
  if (mode == BootstrapMode::exact) {
    if (!problem.exact) {
      throw ConfigurationError("exact bootstrap requested but the problem has no exact solution");
    }
    return SchemeState{0, 0.0, problem.initial_u, problem.initial_ut,
                       sample_solitary_wave(*problem.exact, problem.grid, -dt)};
  }
  return SchemeState{0, 0.0, problem.initial_u, problem.initial_ut, problem.initial_u};
}

FrutosState bootstrap_frutos(const GBProblem& problem, double dt) {
  require_dt(dt);
  if (problem.power != 2) {
    throw ConfigurationError("the reference scheme is defined for p = 2 only");
  }
  if (!problem.exact) {
    throw ConfigurationError("reference scheme start-up needs an exact solution");
  }
  return FrutosState{0, 0.0, problem.initial_u,
                     sample_solitary_wave(*problem.exact, problem.grid, -dt)};
}

long step_count(double final_time, double dt) {
  require_dt(dt);
  if (!(final_time >= 0.0) || !std::isfinite(final_time)) {
    throw ConfigurationError("final time must be non-negative, got " + std::to_string(final_time));
  }
  const double ratio = final_time / dt;
  const long k = std::lround(ratio);
  const double mismatch = std::abs(static_cast<double>(k) * dt - final_time);
  if (mismatch > 1e-9 * std::max(final_time, dt)) {
    throw ConfigurationError("final time " + std::to_string(final_time) +
                             " is not an integer multiple of dt = " + std::to_string(dt));
  }
  return k;
}

namespace {

class RunMonitor {
 public:
  RunMonitor(const RunOptions& options, long total_steps, double initial_norm)
      : options_(options),
        stride_(options.stride > 0 ? options.stride
                                   : std::max<long>(1, (total_steps + 99) / 100)),
        total_(total_steps),
        limit_(kBlowUpGrowth * initial_norm) {}

  bool due(long step) const { return step % stride_ == 0 || step == total_; }

  void observe(const SchemeState& s, std::vector<TraceSample>& trace) const {
    if (!due(s.step_index)) return;
    trace.push_back({s.step_index, s.time, norm2(s.u_curr), norm2(s.psi_curr), mass(s.u_curr)});
    for (const auto& obs : options_.observers) obs(s);
  }

  bool diverged(bool finite, const GridFunction& u) const {
    if (!finite) return true;
    return limit_ > 0.0 && norm2(u) > limit_;
  }

 private:
  const RunOptions& options_;
  long stride_;
  long total_;
  double limit_;
};

GridFunction backward_velocity(const GridFunction& u, const GridFunction& u1,
                               const std::optional<GridFunction>& u2, double dt) {
  if (!u2) return (1.0 / dt) * (u - u1);
  GridFunction v = 3.0 * u;
  v -= 4.0 * u1;
  v += *u2;
  return (0.5 / dt) * v;
}

RunResult run_proposed(const GBProblem& problem, double dt, long k,
                       const RunOptions& options) {
  RunResult result{bootstrap(problem, dt, options.bootstrap), k, false, std::nullopt, {}};
  SchemeState& s = result.final_state;
  const RunMonitor monitor(options, k, norm2(s.u_curr));
  ProposedStepper stepper(problem.grid, dt, problem.power);
  monitor.observe(s, result.trace);
  for (long n = 0; n < k; ++n) {
    const bool finite = stepper.advance(s);
    if (monitor.diverged(finite, s.u_curr)) {
      result.diverged = true;
      result.diverged_at_step = s.step_index;
      break;
    }
    monitor.observe(s, result.trace);
  }
  return result;
}

RunResult run_frutos(const GBProblem& problem, double dt, long k, const RunOptions& options) {
  FrutosState f = bootstrap_frutos(problem, dt);
  std::optional<GridFunction> older;
  auto as_scheme_state = [&]() {
    GridFunction psi = f.step_index == 0 ? problem.initial_ut
                                         : backward_velocity(f.u_curr, f.u_prev, older, dt);
    return SchemeState{f.step_index, f.time, f.u_curr, std::move(psi), f.u_prev};
  };

  RunResult result{as_scheme_state(), k, false, std::nullopt, {}};
  const RunMonitor monitor(options, k, norm2(f.u_curr));
  FrutosStepper stepper(problem.grid, dt);
  monitor.observe(result.final_state, result.trace);
  for (long n = 0; n < k; ++n) {
    older = f.u_prev;
    const bool finite = stepper.advance(f);
    if (monitor.diverged(finite, f.u_curr)) {
      result.diverged = true;
      result.diverged_at_step = f.step_index;
      break;
    }
    if (monitor.due(f.step_index)) monitor.observe(as_scheme_state(), result.trace);
  }
  result.final_state = as_scheme_state();
  return result;
}

}  // namespace

RunResult run(const GBProblem& problem, Scheme scheme, double dt, double final_time,
              const RunOptions& options) {
  const long k = step_count(final_time, dt);
  if (scheme == Scheme::frutos) return run_frutos(problem, dt, k, options);
  return run_proposed(problem, dt, k, options);
}

}  // namespace gbsolve

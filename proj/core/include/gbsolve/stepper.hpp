#pragma once

// Time integration of the GB equation.
//
// Proposed scheme (two variables, psi ~ u_t):
//   (psi^{n+1} - psi^n)/dt = -D^4 u^{n+1/2} + D^2 u^{n+1/2}
//                            + D^2( 3/2 (u^n)^p - 1/2 (u^{n-1})^p )
//   (u^{n+1} - u^n)/dt     = (psi^{n+1} + psi^n) / 2
// with u^{n+1/2} = (u^{n+1} + u^n)/2. Eliminating psi^{n+1} gives a linear
// system for u^{n+1} that is diagonal in Fourier space with symbol
//   lambda_l = 2/dt^2 + (k_l^4 + k_l^2)/2 > 0.
//
// Reference three-level scheme (p = 2 only):
//   (u^{n+1} - 2u^n + u^{n-1})/dt^2 = -1/4 D^4 (u^{n+1} + 2u^n + u^{n-1})
//                                     + D^2 u^n + D^2 (u^n)^2

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "gbsolve/gb_model.hpp"
#include "gbsolve/grid.hpp"

namespace gbsolve {

enum class Scheme { proposed, frutos };
enum class BootstrapMode { exact, self_start };

struct SchemeState {
  long step_index = 0;
  double time = 0.0;
  GridFunction u_curr;
  GridFunction psi_curr;
  GridFunction u_prev;
};

struct FrutosState {
  long step_index = 0;
  double time = 0.0;
  GridFunction u_curr;
  GridFunction u_prev;
};

struct ImplicitDiagonal {
  Grid grid;
  double dt;
  std::vector<double> lambda;  // l = -N..N at index l + N

  double operator()(int mode) const {
    return lambda.at(static_cast<std::size_t>(mode + grid.half_modes()));
  }
};

/// Throws ParameterError when dt <= 0.
ImplicitDiagonal build_implicit_diagonal(const Grid& grid, double dt);

/// Reusable stepper for the proposed scheme on one grid. Owns scratch
/// buffers, so one instance per run.
class ProposedStepper {
 public:
  ProposedStepper(const Grid& grid, double dt, int power);

  const ImplicitDiagonal& diagonal() const noexcept { return diagonal_; }
  double dt() const noexcept { return dt_; }
  int power() const noexcept { return power_; }

  /// Advance one step in place. Returns false if the new state is not finite.
  bool advance(SchemeState& state);

 private:
  Grid grid_;
  double dt_;
  int power_;
  ImplicitDiagonal diagonal_;
  std::vector<double> explicit_coeff_;  // 2/dt^2 - (k^4 + k^2)/2, l = 0..N
  std::vector<double> inv_lambda_;      // l = 0..N
  std::vector<double> minus_k2_;        // l = 0..N
  std::vector<double> nl_;
  std::vector<std::complex<double>> u_hat_, psi_hat_, nl_hat_;
  GridFunction next_u_;
  GridFunction next_psi_;
};

/// One proposed step; throws BlowUpError if the result is not finite.
SchemeState step_proposed(const SchemeState& state, double dt, int power);

/// Reusable stepper for the three-level reference scheme (p = 2).
class FrutosStepper {
 public:
  FrutosStepper(const Grid& grid, double dt);

  /// Fourier symbol 1/dt^2 + k_l^4/4 of the implicit operator.
  double diagonal(int mode) const;
  double dt() const noexcept { return dt_; }

  bool advance(FrutosState& state);

 private:
  Grid grid_;
  double dt_;
  std::vector<double> a_;        // 1/dt^2 + k^4/4, l = 0..N
  std::vector<double> b_;        // 2/dt^2 - k^4/2 - k^2
  std::vector<double> minus_k2_;
  std::vector<double> nl_;
  std::vector<std::complex<double>> u_hat_, prev_hat_, nl_hat_;
  GridFunction next_u_;
};

FrutosState step_frutos(const FrutosState& state, double dt);

/// Initial SchemeState: psi^0 = v0; u^{-1} from the exact solution at -dt
/// (exact) or u^{-1} = u^0 (self_start). Exact mode without an attached
/// exact solution throws ConfigurationError.
SchemeState bootstrap(const GBProblem& problem, double dt, BootstrapMode mode);

/// Reference scheme start-up from the exact solution at t = -dt.
FrutosState bootstrap_frutos(const GBProblem& problem, double dt);

/// K = round(T/dt); throws ConfigurationError if K*dt misses T by more than
/// 1e-9 relative or T is negative (T = 0 gives K = 0). dt <= 0 is a
/// ParameterError.
long step_count(double final_time, double dt);

using Observer = std::function<void(const SchemeState&)>;

struct TraceSample {
  long step_index;
  double time;
  double norm_u;
  double norm_psi;
  double mass;
};

struct RunOptions {
  BootstrapMode bootstrap = BootstrapMode::self_start;
  /// Observer interval in steps; 0 means ceil(K/100).
  long stride = 0;
  std::vector<Observer> observers;
};

struct RunResult {
  /// For the reference scheme psi is the second-order backward difference
  /// (3u^n - 4u^{n-1} + u^{n-2}) / (2 dt).
  SchemeState final_state;
  long steps_requested = 0;
  bool diverged = false;
  std::optional<long> diverged_at_step;
  std::vector<TraceSample> trace;
};

/// Divergence: non-finite values or ||u||_2 above this factor times its
/// initial value.
inline constexpr double kBlowUpGrowth = 1e6;

RunResult run(const GBProblem& problem, Scheme scheme, double dt, double final_time,
              const RunOptions& options = {});

}  // namespace gbsolve

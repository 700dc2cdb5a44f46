#pragma once

// Convergence and stability experiments on the solitary-wave benchmark.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gbsolve/stepper.hpp"

namespace gbsolve {

/// `single` is one run per listed scheme at n_list.front() and dt.
enum class SweepKind { spatial, temporal, stability, single };

std::string_view to_string(SweepKind kind) noexcept;
std::string_view to_string(Scheme scheme) noexcept;

struct SweepSpec {
  SweepKind kind = SweepKind::spatial;
  std::vector<int> n_list;
  /// Temporal sweeps: step counts N_K, dt = T / N_K.
  std::vector<long> nk_list;
  /// Spatial and stability sweeps: fixed time step.
  double dt = 1e-4;
  double final_time = 4.0;
  double amplitude = 0.5;
  double x_left = -40.0;
  double x_right = 40.0;
  int power = 2;
  std::vector<Scheme> schemes{Scheme::proposed};
  BootstrapMode bootstrap = BootstrapMode::exact;
  /// Rows run concurrently on this many threads; results keep spec order.
  unsigned threads = 1;

  /// Throws ConfigurationError on empty / non-monotone lists, T <= 0, etc.
  void validate() const;
};

/// N = 32..128 step 8, dt = 1e-4, T = 4, A = 0.5 on (-40, 40).
SweepSpec default_spatial_spec();
/// N = 512, N_K = 100..1000 step 100, T = 4.
SweepSpec default_temporal_spec();
/// Both schemes, dt = 0.04, N doubling from 32 to 4096.
SweepSpec default_stability_spec();

struct SweepRow {
  SweepKind kind;
  Scheme scheme;
  int n;
  double dt;
  long k;
  double final_time;
  double err_psi_l2;
  double err_u_h2;
  double err_u_l2;
  double mass_drift;
  bool diverged;
  double wall_seconds;
};

struct SweepResult {
  SweepKind kind = SweepKind::spatial;
  std::vector<SweepRow> rows;
  /// Temporal sweeps only: slope of log ||D^2(u-u_e)|| and log ||psi-psi_e||
  /// against log dt.
  std::optional<double> fitted_order;
  std::optional<double> fitted_order_psi;
};

/// One solitary-wave run of the given scheme; divergence is recorded in the
/// row rather than thrown. When `trace` is given it receives the run's
/// observer samples taken every `stride` steps (0 means ceil(K/100)).
SweepRow run_row(const SweepSpec& spec, Scheme scheme, int n, double dt, long k,
                 std::vector<TraceSample>* trace = nullptr, long stride = 0);

SweepResult run_spatial_sweep(const SweepSpec& spec);
SweepResult run_temporal_sweep(const SweepSpec& spec);
SweepResult run_stability_experiment(const SweepSpec& spec);
SweepResult run_single(const SweepSpec& spec);
/// Dispatch on spec.kind.
SweepResult run_sweep(const SweepSpec& spec);

enum class ErrorColumn { psi_l2, u_h2, u_l2 };

/// Least-squares slope of log(err) against log(dt). Repeated dt values are
/// counted once (first occurrence); non-finite or non-positive errors are
/// skipped. Throws FitUndefinedError with fewer than two usable points.
double fit_order(std::span<const double> dt, std::span<const double> err);
double fit_order(std::span<const SweepRow> rows, ErrorColumn column = ErrorColumn::u_h2);

double error_of(const SweepRow& row, ErrorColumn column) noexcept;

/// Index of the first row whose error is within `factor` of the smallest
/// error in the sweep (the onset of saturation).
std::size_t saturation_index(std::span<const SweepRow> rows, ErrorColumn column,
                             double factor = 5.0);

/// Pilot calibration for the stability experiment: starting from
/// spec.n_list.front(), double N until the reference scheme diverges at
/// spec.dt or N exceeds n_cap. Returns the visited N values.
std::vector<int> pilot_stability_n_list(const SweepSpec& spec, int n_cap);

}  // namespace gbsolve

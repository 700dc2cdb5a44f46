#include "gbsolve/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "gbsolve/diagnostics.hpp"
#include "gbsolve/errors.hpp"
#include "gbsolve/gb_model.hpp"

namespace gbsolve {

std::string_view to_string(SweepKind kind) noexcept {
  switch (kind) {
    case SweepKind::spatial: return "spatial";
    case SweepKind::temporal: return "temporal";
    case SweepKind::stability: return "stability";
    case SweepKind::single: return "run";
  }
  return "unknown";
}

std::string_view to_string(Scheme scheme) noexcept {
  return scheme == Scheme::frutos ? "frutos" : "proposed";
}

namespace {

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](T a, T b) { return !(a < b); }) == v.end();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RowTask {
  Scheme scheme;
  int n;
  double dt;
  long k;
};

std::vector<SweepRow> run_tasks(const SweepSpec& spec, const std::vector<RowTask>& tasks) {
  std::vector<std::optional<SweepRow>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const RowTask& t = tasks[i];
      slots[i] = run_row(spec, t.scheme, t.n, t.dt, t.k);
    }
  };
  const unsigned threads =
      std::clamp<unsigned>(spec.threads, 1u, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<SweepRow> rows;
  rows.reserve(tasks.size());
  for (auto& s : slots) rows.push_back(*s);
  return rows;
}

void require_kind(const SweepSpec& spec, SweepKind kind) {
  if (spec.kind != kind) {
    throw ConfigurationError("sweep spec kind is " + std::string(to_string(spec.kind)) +
                             ", expected " + std::string(to_string(kind)));
  }
  spec.validate();
}

}  // namespace

void SweepSpec::validate() const {
  if (n_list.empty()) throw ConfigurationError("sweep needs a non-empty N list");
  if (!strictly_increasing(n_list)) throw ConfigurationError("N list must be strictly increasing");
  if (n_list.front() < 1) throw ConfigurationError("N values must be positive");
  if (!(final_time > 0.0)) throw ConfigurationError("final time must be positive");
  if (schemes.empty()) throw ConfigurationError("sweep needs at least one scheme");
  if (!(x_right > x_left)) throw ConfigurationError("domain must satisfy x_left < x_right");
  if (power < 2) throw ConfigurationError("nonlinearity power must be >= 2");
  if (kind == SweepKind::temporal) {
    if (nk_list.empty()) throw ConfigurationError("temporal sweep needs a non-empty N_K list");
    if (!strictly_increasing(nk_list)) {
      throw ConfigurationError("N_K list must be strictly increasing");
    }
    if (nk_list.front() < 1) throw ConfigurationError("N_K values must be positive");
  } else if (!(dt > 0.0)) {
    throw ConfigurationError("time step must be positive");
  }
  const bool has_frutos = std::find(schemes.begin(), schemes.end(), Scheme::frutos) != schemes.end();
  if (has_frutos && power != 2) {
    throw ConfigurationError("the reference scheme is defined for p = 2 only");
  }
}

SweepSpec default_spatial_spec() {
  SweepSpec spec;
  spec.kind = SweepKind::spatial;
  for (int n = 32; n <= 128; n += 8) spec.n_list.push_back(n);
  spec.dt = 1e-4;
  return spec;
}

SweepSpec default_temporal_spec() {
  SweepSpec spec;
  spec.kind = SweepKind::temporal;
  spec.n_list = {512};
  for (long nk = 100; nk <= 1000; nk += 100) spec.nk_list.push_back(nk);
  return spec;
}

SweepSpec default_stability_spec() {
  SweepSpec spec;
  spec.kind = SweepKind::stability;
  // dt = T/100 is the coarsest step of the temporal sweep; with it the
  // reference scheme's linear limit dt * k_max <= 2 is crossed between
  // N = 512 and N = 1024 on (-40, 40).
  spec.dt = 0.04;
  spec.n_list = {32, 64, 128, 256, 512, 1024, 2048, 4096};
  spec.schemes = {Scheme::proposed, Scheme::frutos};
  return spec;
}

SweepRow run_row(const SweepSpec& spec, Scheme scheme, int n, double dt, long k,
                 std::vector<TraceSample>* trace, long stride) {
  const auto start = std::chrono::steady_clock::now();
  const Grid grid(n, spec.x_left, spec.x_right);
  const SolitaryWaveParams wave = params_from_amplitude(spec.amplitude, 0.0);
  const GBProblem problem = solitary_problem(wave, grid, spec.power);
  const double final_time = static_cast<double>(k) * dt;

  RunOptions options;
  options.bootstrap = spec.bootstrap;
  options.stride = trace != nullptr ? stride : std::max<long>(k, 1);
  RunResult result = run(problem, scheme, dt, final_time, options);
  if (trace != nullptr) *trace = std::move(result.trace);

  SweepRow row{spec.kind, scheme, n, dt, k, final_time, kNaN, kNaN, kNaN, kNaN,
               result.diverged, 0.0};
  if (!result.diverged) {
    const ErrorRecord err = error_norms(result.final_state, wave);
    row.err_psi_l2 = err.err_psi_l2;
    row.err_u_h2 = err.err_u_h2;
    row.err_u_l2 = err.err_u_l2;
    row.mass_drift = err.mass - mass(problem.initial_u);
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

SweepResult run_spatial_sweep(const SweepSpec& spec) {
  require_kind(spec, SweepKind::spatial);
  const long k = step_count(spec.final_time, spec.dt);
  std::vector<RowTask> tasks;
  for (Scheme s : spec.schemes) {
    for (int n : spec.n_list) tasks.push_back({s, n, spec.dt, k});
  }
  return SweepResult{SweepKind::spatial, run_tasks(spec, tasks), std::nullopt, std::nullopt};
}

SweepResult run_temporal_sweep(const SweepSpec& spec) {
  require_kind(spec, SweepKind::temporal);
  std::vector<RowTask> tasks;
  for (Scheme s : spec.schemes) {
    for (int n : spec.n_list) {
      for (long nk : spec.nk_list) {
        tasks.push_back({s, n, spec.final_time / static_cast<double>(nk), nk});
      }
    }
  }
  SweepResult result{SweepKind::temporal, run_tasks(spec, tasks), std::nullopt, std::nullopt};
  // Orders are fitted over the rows of the first (scheme, N) block.
  const std::span<const SweepRow> block(result.rows.data(), spec.nk_list.size());
  try {
    result.fitted_order = fit_order(block, ErrorColumn::u_h2);
    result.fitted_order_psi = fit_order(block, ErrorColumn::psi_l2);
  } catch (const FitUndefinedError&) {
    // Single N_K or all rows diverged: no order to report.
  }
  return result;
}

SweepResult run_stability_experiment(const SweepSpec& spec) {
  require_kind(spec, SweepKind::stability);
  const long k = step_count(spec.final_time, spec.dt);
  std::vector<RowTask> tasks;
  for (int n : spec.n_list) {
    for (Scheme s : spec.schemes) tasks.push_back({s, n, spec.dt, k});
  }
  return SweepResult{SweepKind::stability, run_tasks(spec, tasks), std::nullopt, std::nullopt};
}

SweepResult run_single(const SweepSpec& spec) {
  require_kind(spec, SweepKind::single);
  const long k = step_count(spec.final_time, spec.dt);
  std::vector<RowTask> tasks;
  for (Scheme s : spec.schemes) tasks.push_back({s, spec.n_list.front(), spec.dt, k});
  return SweepResult{SweepKind::single, run_tasks(spec, tasks), std::nullopt, std::nullopt};
}

SweepResult run_sweep(const SweepSpec& spec) {
  switch (spec.kind) {
    case SweepKind::spatial: return run_spatial_sweep(spec);
    case SweepKind::temporal: return run_temporal_sweep(spec);
    case SweepKind::stability: return run_stability_experiment(spec);
    case SweepKind::single: return run_single(spec);
  }
  throw ConfigurationError("unknown sweep kind");
}

double fit_order(std::span<const double> dt, std::span<const double> err) {
  if (dt.size() != err.size()) {
    throw DimensionError("fit_order: dt and error lists differ in length");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> seen;
  for (std::size_t i = 0; i < dt.size(); ++i) {
    if (!(dt[i] > 0.0) || !std::isfinite(dt[i])) continue;
    if (!(err[i] > 0.0) || !std::isfinite(err[i])) continue;
    if (std::find(seen.begin(), seen.end(), dt[i]) != seen.end()) continue;
    seen.push_back(dt[i]);
    xs.push_back(std::log(dt[i]));
    ys.push_back(std::log(err[i]));
  }
  if (xs.size() < 2) {
    throw FitUndefinedError("order fit needs at least two distinct step sizes with finite errors");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double error_of(const SweepRow& row, ErrorColumn column) noexcept {
  switch (column) {
    case ErrorColumn::psi_l2: return row.err_psi_l2;
    case ErrorColumn::u_h2: return row.err_u_h2;
    case ErrorColumn::u_l2: return row.err_u_l2;
  }
  return kNaN;
}

double fit_order(std::span<const SweepRow> rows, ErrorColumn column) {
  std::vector<double> dt;
  std::vector<double> err;
  for (const SweepRow& r : rows) {
    if (r.diverged) continue;
    dt.push_back(r.dt);
    err.push_back(error_of(r, column));
  }
  return fit_order(dt, err);
}

std::size_t saturation_index(std::span<const SweepRow> rows, ErrorColumn column, double factor) {
  double floor = std::numeric_limits<double>::infinity();
  for (const SweepRow& r : rows) {
    const double e = error_of(r, column);
    if (std::isfinite(e)) floor = std::min(floor, e);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (error_of(rows[i], column) <= factor * floor) return i;
  }
  return rows.size();
}

std::vector<int> pilot_stability_n_list(const SweepSpec& spec, int n_cap) {
  if (spec.n_list.empty()) throw ConfigurationError("pilot needs a starting N");
  const long k = step_count(spec.final_time, spec.dt);
  std::vector<int> visited;
  for (int n = spec.n_list.front(); n <= n_cap; n *= 2) {
    visited.push_back(n);
    if (run_row(spec, Scheme::frutos, n, spec.dt, k).diverged) break;
  }
  return visited;
}

}  // namespace gbsolve

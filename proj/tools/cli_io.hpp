#pragma once

// Command-line driver pieces: argument parsing, CSV output, plot scripts and
// the self-check. Exit codes: 0 success, 1 runtime or I/O failure, 2 usage.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gbsolve/errors.hpp"
#include "gbsolve/harness.hpp"
#include "gbsolve/stepper.hpp"

namespace gbsolve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class Subcommand { run, sweep_space, sweep_time, stability, verify };

struct RunConfig {
  Subcommand subcommand = Subcommand::run;
  /// One entry for `run`; the N list for sweeps.
  std::vector<int> n_list;
  std::optional<double> dt;
  /// One entry for `run`; the N_K list for `sweep-time`.
  std::vector<long> nk_list;
  double final_time = 4.0;
  double amplitude = 0.5;
  int power = 2;
  double x_left = -40.0;
  double x_right = 40.0;
  Scheme scheme = Scheme::proposed;
  BootstrapMode bootstrap = BootstrapMode::exact;
  std::optional<std::filesystem::path> out;
  /// 0 means ceil(K/100).
  long stride = 0;
  bool emit_plot = false;
  unsigned threads = 1;
  /// Set when --help was requested; holds the help text.
  std::optional<std::string> help;
};

/// Throws UsageError on unknown flags, conflicting --dt/--nk or bad ranges.
RunConfig parse_args(int argc, const char* const* argv);

/// Sweep specification for the sweep subcommands.
SweepSpec to_sweep_spec(const RunConfig& config);

inline constexpr const char* kCsvHeader =
    "kind,scheme,N,dt,K,T,err_psi_l2,err_u_h2,err_u_l2,mass_drift,diverged,wall_seconds";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

void write_csv(const SweepResult& result, std::ostream& out);
/// Throws IoError if the file cannot be written.
void write_csv(const SweepResult& result, const std::filesystem::path& path);

/// Parses files produced by write_csv. Throws IoError on malformed input.
SweepResult read_csv(std::istream& in);
SweepResult read_csv(const std::filesystem::path& path);

/// Writes a gnuplot script next to the CSV (same stem, `.gp`) and returns its
/// path; returns nullopt and writes nothing for an empty result.
std::optional<std::filesystem::path> emit_plot_script(const SweepResult& result,
                                                      const std::filesystem::path& csv_path);

/// Hooks for exercising verify() against a deliberately broken operator.
struct VerifyFaults {
  bool negate_second_derivative = false;
};

/// Fast invariant suite; prints one line per check. Returns 0 if all pass.
int verify(std::ostream& out, const VerifyFaults& faults = {});

/// Whole CLI: parse, dispatch, report. Returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbsolve::cli

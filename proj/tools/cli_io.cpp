#include "cli_io.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "gbsolve/gb_model.hpp"

namespace gbsolve::cli {

namespace {

struct RawFlags {
  std::vector<int> n;
  std::optional<double> dt;
  std::vector<long> nk;
  std::optional<double> final_time;
  std::optional<double> amplitude;
  std::optional<int> power;
  std::optional<double> x_left;
  std::optional<double> x_right;
  std::optional<std::string> scheme;
  std::optional<std::string> bootstrap;
  std::optional<std::string> out;
  std::optional<long> stride;
  bool emit_plot = false;
  std::optional<unsigned> threads;
};

void add_run_flags(CLI::App* sub, RawFlags& f) {
  sub->add_option("--N", f.n, "Half number of Fourier modes (comma-separated list for sweeps)")
      ->delimiter(',');
  sub->add_option("--dt", f.dt, "Time step");
  sub->add_option("--nk", f.nk, "Number of time steps, dt = T/nk (list for sweep-time)")
      ->delimiter(',');
  sub->add_option("--T", f.final_time, "Final time (default 4)");
  sub->add_option("--amplitude", f.amplitude, "Solitary-wave amplitude A in (0, 3/2] (default 0.5)");
  sub->add_option("--p", f.power, "Nonlinearity power (default 2)");
  sub->add_option("--xmin", f.x_left, "Left end of the periodic domain (default -40)");
  sub->add_option("--xmax", f.x_right, "Right end of the periodic domain (default 40)");
  sub->add_option("--scheme", f.scheme, "proposed | frutos (default proposed)");
  sub->add_option("--bootstrap", f.bootstrap, "exact | self-start (default exact)");
  sub->add_option("--out", f.out, "CSV output path (default: standard output)");
  sub->add_option("--stride", f.stride, "Observer interval in steps (default ceil(K/100))");
  sub->add_flag("--emit-plot", f.emit_plot, "Also write a gnuplot script next to the CSV");
  sub->add_option("--threads", f.threads, "Worker threads for sweep rows (default 1)");
}

template <class T>
void require(bool ok, const T& message) {
  if (!ok) throw UsageError(message);
}

RunConfig resolve(Subcommand sub, const RawFlags& f) {
  RunConfig c;
  c.subcommand = sub;
  if (sub == Subcommand::verify) return c;

  require(!(f.dt && !f.nk.empty()), "--dt and --nk are mutually exclusive");
  c.final_time = f.final_time.value_or(4.0);
  c.amplitude = f.amplitude.value_or(0.5);
  c.power = f.power.value_or(2);
  c.x_left = f.x_left.value_or(-40.0);
  c.x_right = f.x_right.value_or(40.0);
  c.emit_plot = f.emit_plot;
  c.threads = f.threads.value_or(1u);
  c.stride = f.stride.value_or(0);

  require(std::isfinite(c.final_time) && c.final_time > 0.0, "--T must be positive");
  require(c.amplitude > 0.0 && c.amplitude <= 1.5, "--amplitude must lie in (0, 1.5]");
  require(c.power >= 2, "--p must be >= 2");
  require(std::isfinite(c.x_left) && std::isfinite(c.x_right) && c.x_left < c.x_right,
          "--xmin must be smaller than --xmax");
  require(!f.stride || *f.stride >= 1, "--stride must be >= 1");
  require(c.threads >= 1, "--threads must be >= 1");
  require(!f.dt || (std::isfinite(*f.dt) && *f.dt > 0.0), "--dt must be positive");
  for (int n : f.n) require(n >= 1, "--N values must be >= 1");
  for (long nk : f.nk) require(nk >= 1, "--nk values must be >= 1");

  if (f.scheme) {
    require(*f.scheme == "proposed" || *f.scheme == "frutos",
            "--scheme must be 'proposed' or 'frutos'");
    c.scheme = *f.scheme == "frutos" ? Scheme::frutos : Scheme::proposed;
  }
  if (f.bootstrap) {
    require(*f.bootstrap == "exact" || *f.bootstrap == "self-start",
            "--bootstrap must be 'exact' or 'self-start'");
    c.bootstrap = *f.bootstrap == "exact" ? BootstrapMode::exact : BootstrapMode::self_start;
  }
  require(!(c.scheme == Scheme::frutos && c.power != 2), "--scheme frutos requires --p 2");
  if (f.out) c.out = *f.out;
  require(!c.emit_plot || c.out.has_value(), "--emit-plot needs --out");

  switch (sub) {
    case Subcommand::run: {
      require(f.n.size() <= 1, "run takes a single --N");
      require(f.nk.size() <= 1, "run takes a single --nk");
      c.n_list = f.n.empty() ? std::vector<int>{512} : f.n;
      if (f.dt) {
        c.dt = *f.dt;
      } else {
        c.nk_list = f.nk.empty() ? std::vector<long>{1000} : f.nk;
        c.dt = c.final_time / static_cast<double>(c.nk_list.front());
      }
      break;
    }
    case Subcommand::sweep_space: {
      const SweepSpec d = default_spatial_spec();
      c.n_list = f.n.empty() ? d.n_list : f.n;
      require(f.nk.size() <= 1, "sweep-space takes a single --nk");
      c.dt = f.dt ? *f.dt
                  : (f.nk.empty() ? d.dt : c.final_time / static_cast<double>(f.nk.front()));
      break;
    }
    case Subcommand::sweep_time: {
      require(!f.dt, "sweep-time is driven by --nk; --dt is not accepted");
      const SweepSpec d = default_temporal_spec();
      c.n_list = f.n.empty() ? d.n_list : f.n;
      c.nk_list = f.nk.empty() ? d.nk_list : f.nk;
      break;
    }
    case Subcommand::stability: {
      require(!f.scheme, "stability always runs both schemes; --scheme is not accepted");
      require(c.power == 2, "stability needs --p 2");
      const SweepSpec d = default_stability_spec();
      c.n_list = f.n.empty() ? d.n_list : f.n;
      require(f.nk.size() <= 1, "stability takes a single --nk");
      c.dt = f.dt ? *f.dt
                  : (f.nk.empty() ? d.dt : c.final_time / static_cast<double>(f.nk.front()));
      break;
    }
    case Subcommand::verify: break;
  }
  return c;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("CSV: cannot parse number '" + s + "'");
  }
  return v;
}

template <class Int>
Int parse_int(const std::string& s) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("CSV: cannot parse integer '" + s + "'");
  }
  return v;
}

SweepKind parse_kind(const std::string& s) {
  if (s == "spatial") return SweepKind::spatial;
  if (s == "temporal") return SweepKind::temporal;
  if (s == "stability") return SweepKind::stability;
  if (s == "run") return SweepKind::single;
  throw IoError("CSV: unknown kind '" + s + "'");
}

Scheme parse_scheme(const std::string& s) {
  if (s == "proposed") return Scheme::proposed;
  if (s == "frutos") return Scheme::frutos;
  throw IoError("CSV: unknown scheme '" + s + "'");
}

SweepSpec base_spec(const RunConfig& c, SweepKind kind) {
  SweepSpec s;
  s.kind = kind;
  s.n_list = c.n_list;
  s.nk_list = c.nk_list;
  if (c.dt) s.dt = *c.dt;
  s.final_time = c.final_time;
  s.amplitude = c.amplitude;
  s.x_left = c.x_left;
  s.x_right = c.x_right;
  s.power = c.power;
  s.schemes = {c.scheme};
  s.bootstrap = c.bootstrap;
  s.threads = c.threads;
  return s;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"gbsolve: Fourier pseudospectral solver for the good Boussinesq equation"};
  app.require_subcommand(1, 1);
  RawFlags flags;
  CLI::App* run = app.add_subcommand("run", "Single solitary-wave run");
  CLI::App* space = app.add_subcommand("sweep-space", "Spatial convergence sweep");
  CLI::App* time = app.add_subcommand("sweep-time", "Temporal convergence sweep");
  CLI::App* stab = app.add_subcommand("stability", "Proposed vs reference scheme stability map");
  app.add_subcommand("verify", "Fast invariant self-check");
  for (CLI::App* sub : {run, space, time, stab}) add_run_flags(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    RunConfig c;
    c.help = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Subcommand sub = Subcommand::verify;
  if (name == "run") sub = Subcommand::run;
  if (name == "sweep-space") sub = Subcommand::sweep_space;
  if (name == "sweep-time") sub = Subcommand::sweep_time;
  if (name == "stability") sub = Subcommand::stability;
  return resolve(sub, flags);
}

SweepSpec to_sweep_spec(const RunConfig& c) {
  switch (c.subcommand) {
    case Subcommand::run: return base_spec(c, SweepKind::single);
    case Subcommand::sweep_space: return base_spec(c, SweepKind::spatial);
    case Subcommand::sweep_time: return base_spec(c, SweepKind::temporal);
    case Subcommand::stability: {
      SweepSpec s = base_spec(c, SweepKind::stability);
      s.schemes = {Scheme::proposed, Scheme::frutos};
      return s;
    }
    case Subcommand::verify: break;
  }
  throw UsageError("verify has no sweep specification");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    out << to_string(r.kind) << ',' << to_string(r.scheme) << ',' << r.n << ','
        << format_double(r.dt) << ',' << r.k << ',' << format_double(r.final_time) << ','
        << format_double(r.err_psi_l2) << ',' << format_double(r.err_u_h2) << ','
        << format_double(r.err_u_l2) << ',' << format_double(r.mass_drift) << ','
        << (r.diverged ? "true" : "false") << ',' << format_double(r.wall_seconds) << '\n';
  }
  if (result.fitted_order) out << "# fitted_order=" << format_double(*result.fitted_order) << '\n';
  if (result.fitted_order_psi) {
    out << "# fitted_order_psi=" << format_double(*result.fitted_order_psi) << '\n';
  }
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(result, file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IoError("CSV: missing or unexpected header");
  }
  bool kind_set = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# fitted_order=", 0) == 0) {
      result.fitted_order = parse_double(line.substr(15));
      continue;
    }
    if (line.rfind("# fitted_order_psi=", 0) == 0) {
      result.fitted_order_psi = parse_double(line.substr(19));
      continue;
    }
    if (line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() != 12) throw IoError("CSV: expected 12 columns in '" + line + "'");
    SweepRow r{parse_kind(cells[0]),
               parse_scheme(cells[1]),
               parse_int<int>(cells[2]),
               parse_double(cells[3]),
               parse_int<long>(cells[4]),
               parse_double(cells[5]),
               parse_double(cells[6]),
               parse_double(cells[7]),
               parse_double(cells[8]),
               parse_double(cells[9]),
               cells[10] == "true",
               parse_double(cells[11])};
    if (cells[10] != "true" && cells[10] != "false") {
      throw IoError("CSV: diverged must be true or false, got '" + cells[10] + "'");
    }
    if (!kind_set) {
      result.kind = r.kind;
      kind_set = true;
    }
    result.rows.push_back(r);
  }
  return result;
}

SweepResult read_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_csv(file);
}

std::optional<std::filesystem::path> emit_plot_script(const SweepResult& result,
                                                      const std::filesystem::path& csv_path) {
  if (result.rows.empty()) return std::nullopt;

  std::filesystem::path script = csv_path;
  script.replace_extension(".gp");
  std::filesystem::path image = csv_path.filename();
  image.replace_extension(".png");
  const std::string csv = csv_path.filename().string();

  std::ostringstream gp;
  gp << "# gnuplot script; run from the directory containing " << csv << "\n"
     << "set datafile separator \",\"\n"
     << "set terminal pngcairo size 800,600\n"
     << "set output \"" << image.string() << "\"\n"
     << "set logscale y\n"
     << "set format y \"10^{%L}\"\n"
     << "set grid\n"
     << "set key top right\n";

  switch (result.kind) {
    case SweepKind::temporal: {
      const SweepRow& first = result.rows.front();
      const double kk = static_cast<double>(first.k) * static_cast<double>(first.k);
      gp << "set logscale x\n"
         << "set xlabel \"N_K (number of time steps)\"\n"
         << "set ylabel \"error at T = " << format_double(first.final_time) << "\"\n"
         << "C_psi = " << format_double(first.err_psi_l2 * kk) << "\n"
         << "C_u = " << format_double(first.err_u_h2 * kk) << "\n"
         << "plot \"" << csv << "\" skip 1 using 5:7 with linespoints title \"||psi - psi_e||_2\", \\\n"
         << "     \"" << csv << "\" skip 1 using 5:8 with linespoints title \"||D^2(u - u_e)||_2\", \\\n"
         << "     C_psi * x**-2 with lines dashtype 2 title \"C N_K^{-2}\", \\\n"
         << "     C_u * x**-2 with lines dashtype 2 notitle\n";
      break;
    }
    case SweepKind::stability:
      gp << "set xlabel \"N\"\n"
         << "set ylabel \"||D^2(u - u_e)||_2 at T\"\n"
         << "set logscale x 2\n"
         << "plot \"" << csv << "\" skip 1 using 3:(stringcolumn(2) eq \"proposed\" ? $8 : 1/0) "
            "with linespoints title \"proposed\", \\\n"
         << "     \"" << csv << "\" skip 1 using 3:(stringcolumn(2) eq \"frutos\" ? $8 : 1/0) "
            "with linespoints title \"frutos\"\n";
      break;
    case SweepKind::spatial:
    case SweepKind::single:
      gp << "set xlabel \"N\"\n"
         << "set ylabel \"error at T\"\n"
         << "plot \"" << csv << "\" skip 1 using 3:7 with linespoints title \"||psi - psi_e||_2\", \\\n"
         << "     \"" << csv << "\" skip 1 using 3:8 with linespoints title \"||D^2(u - u_e)||_2\"\n";
      break;
  }

  std::ofstream file(script, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + script.string() + "' for writing");
  file << gp.str();
  file.flush();
  if (!file) throw IoError("failed writing '" + script.string() + "'");
  return script;
}

namespace {

int run_single_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = to_sweep_spec(c);
  spec.validate();
  const long k = step_count(spec.final_time, spec.dt);
  std::vector<TraceSample> trace;
  SweepResult result{SweepKind::single, {}, std::nullopt, std::nullopt};
  result.rows.push_back(run_row(spec, c.scheme, spec.n_list.front(), spec.dt, k, &trace, c.stride));

  const bool csv_to_stdout = !c.out.has_value();
  std::ostream& log = csv_to_stdout ? err : out;
  log << "# step,time,norm_u,norm_psi,mass\n";
  for (const TraceSample& s : trace) {
    log << "# " << s.step_index << ',' << format_double(s.time) << ',' << format_double(s.norm_u)
        << ',' << format_double(s.norm_psi) << ',' << format_double(s.mass) << '\n';
  }
  if (csv_to_stdout) {
    write_csv(result, out);
  } else {
    write_csv(result, *c.out);
    if (c.emit_plot) emit_plot_script(result, *c.out);
  }
  return result.rows.front().diverged ? kExitFailure : kExitOk;
}

int run_sweep_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SweepResult result = run_sweep(to_sweep_spec(c));
  if (!c.out) {
    write_csv(result, out);
    return kExitOk;
  }
  write_csv(result, *c.out);
  if (c.emit_plot) {
    const auto script = emit_plot_script(result, *c.out);
    if (!script) err << "warning: empty result, no plot script written\n";
  }
  if (result.fitted_order) {
    out << "fitted order: u_h2 " << format_double(*result.fitted_order);
    if (result.fitted_order_psi) out << ", psi_l2 " << format_double(*result.fitted_order_psi);
    out << '\n';
  }
  out << "wrote " << result.rows.size() << " rows to " << c.out->string() << '\n';
  return kExitOk;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun 'gbsolve --help' for usage\n";
    return kExitUsage;
  }
  if (config.help) {
    out << *config.help;
    return kExitOk;
  }
  try {
    switch (config.subcommand) {
      case Subcommand::verify: return verify(out);
      case Subcommand::run: return run_single_command(config, out, err);
      default: return run_sweep_command(config, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigurationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace gbsolve::cli

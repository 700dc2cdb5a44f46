#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "cli_io.hpp"
#include "gbsolve/diagnostics.hpp"
#include "gbsolve/gb_model.hpp"
#include "gbsolve/spectral.hpp"
#include "gbsolve/stepper.hpp"

namespace gbsolve::cli {

namespace {

struct Check {
  bool ok;
  std::string detail;
};

GridFunction random_values(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return GridFunction::sample(grid, [&](double) { return dist(rng); });
}

// Random trigonometric polynomial with modes |l| <= max_mode, returned as
// coefficients on `grid` (which must resolve max_mode).
SpectralField random_trig_coeffs(const Grid& grid, int max_mode, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  SpectralField f(grid);
  f(0) = dist(rng);
  for (int l = 1; l <= max_mode; ++l) {
    const Complex c{dist(rng), dist(rng)};
    f(l) = c;
    f(-l) = std::conj(c);
  }
  return f;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

Check round_trip() {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int n : {16, 64, 256}) {
    const Grid grid(n, 0.0, 2.0 * std::numbers::pi);
    const GridFunction f = random_values(grid, rng);
    const GridFunction back = inverse(forward(f));
    worst = std::max(worst, norm2(back - f) / norm2(f));
  }
  return {worst <= 1e-12, "max relative error " + sci(worst)};
}

Check summation_by_parts(const VerifyFaults& faults) {
  using Op = std::function<GridFunction(const GridFunction&)>;
  const Op d1 = [](const GridFunction& f) { return derivative(f, 1); };
  const Op d2 = [&](const GridFunction& f) {
    GridFunction g = derivative(f, 2);
    if (faults.negate_second_derivative) g *= -1.0;
    return g;
  };
  const Op d4 = [&](const GridFunction& f) { return d2(d2(f)); };

  std::mt19937_64 rng(12);
  double worst = 0.0;
  for (int n : {16, 64}) {
    const Grid grid(n, -40.0, 40.0);
    const GridFunction f = random_values(grid, rng);
    const GridFunction g = random_values(grid, rng);
    auto defect = [](double lhs, double rhs, double scale) { return std::abs(lhs - rhs) / scale; };
    worst = std::max(worst, defect(inner_product(f, d1(g)), -inner_product(d1(f), g),
                                   norm2(f) * norm2(d1(g))));
    worst = std::max(worst, defect(inner_product(f, d2(g)), -inner_product(d1(f), d1(g)),
                                   norm2(f) * norm2(d2(g))));
    worst = std::max(worst, defect(inner_product(f, derivative(derivative(g, 2), 2)),
                                   inner_product(d2(f), d2(g)), norm2(f) * norm2(d4(g))));
  }
  return {worst <= 1e-12, "max normalized defect " + sci(worst)};
}

Check aliasing_bound() {
  std::mt19937_64 rng(13);
  double worst = -1.0;
  for (int p : {2, 3}) {
    const int n = 16;
    const Grid coarse(n, -40.0, 40.0);
    const Grid fine(p * n, -40.0, 40.0);
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralField phi = random_trig_coeffs(fine, p * n, rng);
      const GridFunction on_coarse =
          GridFunction::sample(coarse, [&](double x) { return evaluate(phi, x); });
      for (int k = 0; k <= 2; ++k) {
        const double lhs = sobolev_norm(on_coarse, k);
        const double rhs = std::sqrt(static_cast<double>(p)) * sobolev_norm(phi, k);
        worst = std::max(worst, (lhs - rhs) / rhs);
      }
    }
  }
  return {worst <= 1e-10, "max (|I_N phi| - sqrt(p)|phi|)/sqrt(p)|phi| = " + sci(worst)};
}

Check mass_conservation() {
  std::mt19937_64 rng(14);
  const Grid grid(64, -40.0, 40.0);
  const SpectralField coeffs = random_trig_coeffs(grid, 6, rng);
  GridFunction u0 = inverse(coeffs);
  u0 *= 0.1 / norm2(u0);
  for (double& v : u0.values()) v += 0.05;
  const GBProblem problem(2, u0, GridFunction(grid));
  const double dt = 1e-2;
  RunOptions options;
  const RunResult result = run(problem, Scheme::proposed, dt, 200 * dt, options);
  const double m0 = mass(u0);
  const double drift = std::abs(mass(result.final_state.u_curr) - m0) / std::abs(m0);
  return {!result.diverged && drift <= 1e-12, "relative mass drift " + sci(drift)};
}

Check zero_fixed_point() {
  const Grid grid(32, -40.0, 40.0);
  const GBProblem problem(3, GridFunction(grid), GridFunction(grid));
  const RunResult result = run(problem, Scheme::proposed, 0.1, 1.0);
  const double size = norm2(result.final_state.u_curr) + norm2(result.final_state.psi_curr);
  return {size == 0.0, "norm after 10 steps " + sci(size)};
}

}  // namespace

int verify(std::ostream& out, const VerifyFaults& faults) {
  const auto start = std::chrono::steady_clock::now();
  bool all_ok = true;
  auto report = [&](const char* name, const Check& c) {
    out << (c.ok ? "PASS " : "FAIL ") << name << ": " << c.detail << '\n';
    all_ok = all_ok && c.ok;
  };
  report("transform round trip", round_trip());
  report("summation by parts", summation_by_parts(faults));
  report("aliasing bound", aliasing_bound());
  report("mass conservation", mass_conservation());
  report("zero fixed point", zero_fixed_point());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << (all_ok ? "verify: all checks passed" : "verify: FAILED") << " in " << sci(seconds)
      << " s\n";
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace gbsolve::cli

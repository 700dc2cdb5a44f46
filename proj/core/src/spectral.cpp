#include "gbsolve/spectral.hpp"

#include <cmath>
#include <string>

#include "gbsolve/errors.hpp"
#include "spectral_internal.hpp"

namespace gbsolve {

namespace {

constexpr double kImaginaryResidueTolerance = 1e-10;

std::size_t as_size(int n) { return static_cast<std::size_t>(n); }

// (i k)^order as a complex multiplier.
Complex derivative_symbol(double k, int order) {
  Complex s{1.0, 0.0};
  const Complex ik{0.0, k};
  for (int j = 0; j < order; ++j) s *= ik;
  return s;
}

// 1 + k^2 + ... + k^{2 order}
double sobolev_weight(double k, int order) {
  double w = 1.0;
  double term = 1.0;
  const double k2 = k * k;
  for (int j = 1; j <= order; ++j) {
    term *= k2;
    w += term;
  }
  return w;
}

}  // namespace

SpectralField::SpectralField(Grid grid)
    : grid_(std::move(grid)), coeffs_(as_size(grid_.num_points())) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != as_size(grid_.num_points())) {
    throw DimensionError("spectral field has " + std::to_string(coeffs_.size()) +
                         " coefficients, grid has " + std::to_string(grid_.num_points()) +
                         " modes");
  }
}

double SpectralField::hermitian_defect() const noexcept {
  const int n = grid_.half_modes();
  double sum = 0.0;
  for (int l = -n; l <= n; ++l) {
    const Complex a = coeffs_[index(l)];
    const Complex b = std::conj(coeffs_[index(-l)]);
    sum += std::norm(0.5 * (a - b));
  }
  return std::sqrt(sum);
}

WaveNumbers::WaveNumbers(const Grid& g) : grid(g), k(g.data().wavenumbers) {}

SpectralField forward(const GridFunction& f) {
  if (!f.all_finite()) {
    throw InputCorruptionError("forward transform: grid function contains NaN or Inf");
  }
  const Grid& grid = f.grid();
  const int n = grid.half_modes();
  detail::HalfWorkspace ws(grid);
  detail::forward_half(grid, f.values(), ws.spec);

  SpectralField out(grid);
  out(0) = Complex{ws.spec[0].real(), 0.0};
  for (int l = 1; l <= n; ++l) {
    out(l) = ws.spec[as_size(l)];
    out(-l) = std::conj(ws.spec[as_size(l)]);
  }
  return out;
}

GridFunction inverse(const SpectralField& field) {
  const Grid& grid = field.grid();
  const int n = grid.half_modes();

  double total = 0.0;
  for (const Complex& c : field.coeffs()) total += std::norm(c);
  const double defect = field.hermitian_defect();
  if (defect > kImaginaryResidueTolerance * std::sqrt(total)) {
    throw SymmetryError("inverse transform: imaginary residue " + std::to_string(defect) +
                        " exceeds tolerance for real output");
  }

  // Hermitian part only: (c_l + conj(c_{-l})) / 2 for l >= 0.
  detail::HalfWorkspace ws(grid);
  ws.spec[0] = Complex{field(0).real(), 0.0};
  for (int l = 1; l <= n; ++l) {
    ws.spec[as_size(l)] = 0.5 * (field(l) + std::conj(field(-l)));
  }
  GridFunction out(grid);
  detail::inverse_half(grid, ws.spec, out.values());
  return out;
}

std::vector<Complex> inverse_complex(const SpectralField& field) {
  const Grid& grid = field.grid();
  const int n = grid.half_modes();
  const int m = grid.num_points();
  // Split into Hermitian and anti-Hermitian parts, each of which has a real
  // inverse: f = inv(H) + i * inv(-i A).
  detail::HalfWorkspace herm(grid);
  detail::HalfWorkspace anti(grid);
  for (int l = 0; l <= n; ++l) {
    const Complex a = field(l);
    const Complex b = std::conj(field(-l));
    herm.spec[as_size(l)] = 0.5 * (a + b);
    anti.spec[as_size(l)] = Complex{0.0, -1.0} * 0.5 * (a - b);
  }
  detail::inverse_half(grid, herm.spec, herm.real);
  detail::inverse_half(grid, anti.spec, anti.real);
  std::vector<Complex> out(as_size(m));
  for (int i = 0; i < m; ++i) {
    out[as_size(i)] = Complex{herm.real[as_size(i)], anti.real[as_size(i)]};
  }
  return out;
}

double evaluate(const SpectralField& field, double x) {
  const Grid& grid = field.grid();
  const int n = grid.half_modes();
  const double xi = x - grid.x_left();
  Complex sum{0.0, 0.0};
  for (int l = -n; l <= n; ++l) {
    const double phase = grid.wavenumber(l) * xi;
    sum += field(l) * Complex{std::cos(phase), std::sin(phase)};
  }
  return sum.real();
}

GridFunction derivative(const GridFunction& f, int order) {
  if (order < 1) {
    throw ParameterError("derivative order must be >= 1, got " + std::to_string(order));
  }
  if (!f.all_finite()) {
    throw InputCorruptionError("derivative: grid function contains NaN or Inf");
  }
  const Grid& grid = f.grid();
  const auto& k = grid.data().half_wavenumbers;
  detail::HalfWorkspace ws(grid);
  detail::forward_half(grid, f.values(), ws.spec);
  for (std::size_t l = 0; l < ws.spec.size(); ++l) {
    ws.spec[l] *= derivative_symbol(k[l], order);
  }
  GridFunction out(grid);
  detail::inverse_half(grid, ws.spec, out.values());
  return out;
}

Warned<GridFunction> project(const GridFunction& f, int max_mode) {
  if (max_mode < 1) {
    throw ParameterError("projection needs max_mode >= 1, got " + std::to_string(max_mode));
  }
  const Grid& grid = f.grid();
  if (max_mode >= grid.half_modes()) {
    return {f, "projection onto " + std::to_string(max_mode) +
                   " modes is a no-op on a grid resolving " +
                   std::to_string(grid.half_modes())};
  }
  if (!f.all_finite()) {
    throw InputCorruptionError("project: grid function contains NaN or Inf");
  }
  detail::HalfWorkspace ws(grid);
  detail::forward_half(grid, f.values(), ws.spec);
  for (std::size_t l = static_cast<std::size_t>(max_mode) + 1; l < ws.spec.size(); ++l) {
    ws.spec[l] = 0.0;
  }
  GridFunction out(grid);
  detail::inverse_half(grid, ws.spec, out.values());
  return {std::move(out), std::nullopt};
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum / static_cast<double>(f.size());
}

double norm2(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

double sobolev_norm(const GridFunction& f, int order) {
  if (order < 0) {
    throw ParameterError("Sobolev order must be >= 0, got " + std::to_string(order));
  }
  if (!f.all_finite()) {
    throw InputCorruptionError("sobolev_norm: grid function contains NaN or Inf");
  }
  const Grid& grid = f.grid();
  const auto& k = grid.data().half_wavenumbers;
  detail::HalfWorkspace ws(grid);
  detail::forward_half(grid, f.values(), ws.spec);
  double sum = std::norm(ws.spec[0]);
  for (std::size_t l = 1; l < ws.spec.size(); ++l) {
    sum += 2.0 * sobolev_weight(k[l], order) * std::norm(ws.spec[l]);
  }
  return std::sqrt(sum);
}

double sobolev_norm(const SpectralField& field, int order) {
  if (order < 0) {
    throw ParameterError("Sobolev order must be >= 0, got " + std::to_string(order));
  }
  const int n = field.half_modes();
  double sum = 0.0;
  for (int l = -n; l <= n; ++l) {
    sum += sobolev_weight(field.grid().wavenumber(l), order) * std::norm(field(l));
  }
  return std::sqrt(sum);
}

}  // namespace gbsolve

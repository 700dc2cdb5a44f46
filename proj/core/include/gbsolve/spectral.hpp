#pragma once

// Periodic 1-D Fourier collocation on the 2N+1 point grid.
//
// Coefficient convention: forward() divides by 2N+1, so coeffs(0) is the
// arithmetic mean of the nodal values and
//     f_i = sum_{l=-N..N} c_l exp(i k_l (x_i - x_left)),  k_l = 2 pi l / L.
// With this scaling the discrete inner product <f,g> = (1/(2N+1)) sum f_i g_i
// satisfies Parseval as <f,f> = sum_l |c_l|^2.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbsolve/grid.hpp"

namespace gbsolve {

using Complex = std::complex<double>;

/// Collocation coefficients for modes l = -N..N.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  int half_modes() const noexcept { return grid_.half_modes(); }

  /// Coefficient of mode l, |l| <= N.
  Complex operator()(int mode) const { return coeffs_.at(index(mode)); }
  Complex& operator()(int mode) { return coeffs_.at(index(mode)); }

  /// Coefficients ordered l = -N..N.
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  /// Norm of the anti-Hermitian part, i.e. of the imaginary part of the
  /// inverse transform (Parseval).
  double hermitian_defect() const noexcept;

 private:
  std::size_t index(int mode) const noexcept {
    return static_cast<std::size_t>(mode + grid_.half_modes());
  }

  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// k_l = 2 pi l / L for l = -N..N.
struct WaveNumbers {
  Grid grid;
  std::vector<double> k;  // index l + N

  explicit WaveNumbers(const Grid& g);
  double operator()(int mode) const { return k.at(static_cast<std::size_t>(mode + grid.half_modes())); }
};

/// Value plus an optional non-fatal diagnostic.
template <class T>
struct Warned {
  T value;
  std::optional<std::string> warning;
};

/// Throws InputCorruptionError on NaN/Inf input.
SpectralField forward(const GridFunction& f);

/// Real inverse. Throws SymmetryError when the imaginary residue exceeds
/// 1e-10 times the function norm.
GridFunction inverse(const SpectralField& field);

/// Complex inverse; no symmetry requirement.
std::vector<Complex> inverse_complex(const SpectralField& field);

/// Evaluate the trigonometric interpolant at an arbitrary point.
double evaluate(const SpectralField& field, double x);

/// D_N^order f; order >= 1.
GridFunction derivative(const GridFunction& f, int order);

/// Zero all modes |l| > max_mode. A no-op (with a warning) when max_mode >= N.
Warned<GridFunction> project(const GridFunction& f, int max_mode);

/// <f,g> = (1/(2N+1)) sum_i f_i g_i.
double inner_product(const GridFunction& f, const GridFunction& g);
double norm2(const GridFunction& f);

/// Discrete H^k norm: sqrt(sum_l (1 + k_l^2 + ... + k_l^{2k}) |c_l|^2).
double sobolev_norm(const GridFunction& f, int order);
double sobolev_norm(const SpectralField& field, int order);

}  // namespace gbsolve

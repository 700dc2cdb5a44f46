#pragma once

#include <complex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace gbsolve::detail {

// Real <-> half-complex DFT of odd length n = 2N+1. Unnormalized in both
// directions, as FFTW. Plans are created once and executed with the
// new-array interface, which FFTW guarantees to be thread-safe.
class FourierPlan {
 public:
  explicit FourierPlan(int n);
  ~FourierPlan();
  FourierPlan(const FourierPlan&) = delete;
  FourierPlan& operator=(const FourierPlan&) = delete;

  // in: n reals, out: n/2+1 complex (modes 0..N).
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // in: n/2+1 complex (modes 0..N), out: n reals. Input is preserved.
  void backward(std::span<const std::complex<double>> in, std::span<double> out) const;

  int size() const noexcept { return n_; }

 private:
  int n_;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

struct GridData {
  GridData(int half_modes, double x_left, double x_right);

  int half_modes;
  int num_points;
  double x_left;
  double length;
  double spacing;
  std::vector<double> nodes;
  std::vector<double> wavenumbers;       // l = -N..N at index l + N
  std::vector<double> half_wavenumbers;  // l = 0..N
  FourierPlan plan;
};

}  // namespace gbsolve::detail

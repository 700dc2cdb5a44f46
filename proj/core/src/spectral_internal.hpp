#pragma once

// Half-spectrum helpers shared by the transform front end and the steppers.

#include <complex>
#include <span>
#include <vector>

#include "gbsolve/grid.hpp"
#include "grid_data.hpp"

namespace gbsolve::detail {

// Normalized forward transform: out[l] = c_l for l = 0..N.
inline void forward_half(const Grid& grid, std::span<const double> in,
                         std::span<std::complex<double>> out) {
  const auto& d = grid.data();
  d.plan.forward(in, out);
  const double scale = 1.0 / d.num_points;
  for (auto& c : out) c *= scale;
}

// Inverse of forward_half (modes -l are implied by conjugate symmetry).
inline void inverse_half(const Grid& grid, std::span<const std::complex<double>> in,
                         std::span<double> out) {
  grid.data().plan.backward(in, out);
}

// Reusable buffers for one thread of work on a given grid.
struct HalfWorkspace {
  explicit HalfWorkspace(const Grid& grid)
      : spec(static_cast<std::size_t>(grid.half_modes() + 1)),
        real(static_cast<std::size_t>(grid.num_points())) {}

  std::vector<std::complex<double>> spec;
  std::vector<double> real;
};

}  // namespace gbsolve::detail

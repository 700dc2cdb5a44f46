#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace gbsolve {

namespace detail {
struct GridData;
}

/// Uniform periodic grid of 2N+1 points on [x_left, x_left + L).
///
/// A Grid is a cheap, immutable handle: copies share the node table, the
/// wavenumber table and the FFT plans, so one Grid may be used from several
/// threads at once.
class Grid {
 public:
  /// Throws ParameterError unless half_modes >= 1 and x_right > x_left.
  Grid(int half_modes, double x_left, double x_right);

  int half_modes() const noexcept;
  int num_points() const noexcept;
  double x_left() const noexcept;
  double x_right() const noexcept;
  double length() const noexcept;
  double spacing() const noexcept;

  double node(int i) const;
  std::span<const double> nodes() const noexcept;

  /// k_l = 2*pi*l/L for l in [-N, N].
  double wavenumber(int mode) const noexcept;

  /// Same grid geometry (handles to distinct but identical grids compare equal).
  bool operator==(const Grid& other) const noexcept;

  const detail::GridData& data() const noexcept { return *data_; }

 private:
  std::shared_ptr<const detail::GridData> data_;
};

/// Real nodal values of a periodic function on a Grid.
class GridFunction {
 public:
  explicit GridFunction(Grid grid);
  GridFunction(Grid grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.num_points()));
    for (int i = 0; i < grid.num_points(); ++i) {
      v[static_cast<std::size_t>(i)] = f(grid.node(i));
    }
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  bool all_finite() const noexcept;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s) noexcept;

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }
  friend GridFunction operator*(GridFunction a, double s) { return a *= s; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Throws DimensionError if the two functions are not on the same grid.
void require_same_grid(const GridFunction& a, const GridFunction& b);

}  // namespace gbsolve

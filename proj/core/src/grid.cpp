#include "gbsolve/grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "gbsolve/errors.hpp"
#include "grid_data.hpp"

namespace gbsolve {
namespace detail {

namespace {
// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FourierPlan::FourierPlan(int n) : n_(n) {
  std::vector<double> real(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(n / 2 + 1));
  auto* r = real.data();
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  // FFTW_ESTIMATE keeps the chosen algorithm, and therefore round-off,
  // identical from one process to the next.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  r2c_ = fftw_plan_dft_r2c_1d(n, r, c, flags);
  c2r_ = fftw_plan_dft_c2r_1d(n, c, r, flags | FFTW_PRESERVE_INPUT);
  if (r2c_ == nullptr || c2r_ == nullptr) {
    throw Error("FFTW failed to create a plan of size " + std::to_string(n));
  }
}

FourierPlan::~FourierPlan() {
  std::lock_guard lock(planner_mutex());
  if (r2c_ != nullptr) fftw_destroy_plan(r2c_);
  if (c2r_ != nullptr) fftw_destroy_plan(c2r_);
}

void FourierPlan::forward(std::span<const double> in,
                          std::span<std::complex<double>> out) const {
  // r2c does not modify its input; FFTW's signature is simply not const.
  fftw_execute_dft_r2c(r2c_, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void FourierPlan::backward(std::span<const std::complex<double>> in,
                           std::span<double> out) const {
  fftw_execute_dft_c2r(
      c2r_,
      const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data())),
      out.data());
}

GridData::GridData(int n_half, double left, double right)
    : half_modes(n_half),
      num_points(2 * n_half + 1),
      x_left(left),
      length(right - left),
      spacing((right - left) / (2 * n_half + 1)),
      plan(2 * n_half + 1) {
  nodes.resize(static_cast<std::size_t>(num_points));
  for (int i = 0; i < num_points; ++i) {
    nodes[static_cast<std::size_t>(i)] = x_left + i * spacing;
  }
  const double base = 2.0 * std::numbers::pi / length;
  wavenumbers.resize(static_cast<std::size_t>(num_points));
  for (int l = -half_modes; l <= half_modes; ++l) {
    wavenumbers[static_cast<std::size_t>(l + half_modes)] = base * l;
  }
  half_wavenumbers.resize(static_cast<std::size_t>(half_modes + 1));
  for (int l = 0; l <= half_modes; ++l) {
    half_wavenumbers[static_cast<std::size_t>(l)] = base * l;
  }
}

}  // namespace detail

namespace {
detail::GridData* make_grid_data(int half_modes, double x_left, double x_right) {
  if (half_modes < 1) {
    throw ParameterError("grid needs at least one resolved mode, got N=" +
                         std::to_string(half_modes));
  }
  if (!std::isfinite(x_left) || !std::isfinite(x_right) || !(x_right > x_left)) {
    throw ParameterError("grid interval must satisfy x_left < x_right");
  }
  return new detail::GridData(half_modes, x_left, x_right);
}
}  // namespace

Grid::Grid(int half_modes, double x_left, double x_right)
    : data_(make_grid_data(half_modes, x_left, x_right)) {}

int Grid::half_modes() const noexcept { return data_->half_modes; }
int Grid::num_points() const noexcept { return data_->num_points; }
double Grid::x_left() const noexcept { return data_->x_left; }
double Grid::x_right() const noexcept { return data_->x_left + data_->length; }
double Grid::length() const noexcept { return data_->length; }
double Grid::spacing() const noexcept { return data_->spacing; }

double Grid::node(int i) const { return data_->nodes.at(static_cast<std::size_t>(i)); }
std::span<const double> Grid::nodes() const noexcept { return data_->nodes; }

double Grid::wavenumber(int mode) const noexcept {
  return 2.0 * std::numbers::pi * mode / data_->length;
}

bool Grid::operator==(const Grid& other) const noexcept {
  if (data_ == other.data_) return true;
  return data_->half_modes == other.data_->half_modes &&
         data_->x_left == other.data_->x_left && data_->length == other.data_->length;
}

GridFunction::GridFunction(Grid grid)
    : grid_(std::move(grid)), values_(static_cast<std::size_t>(grid_.num_points()), 0.0) {}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.num_points())) {
    throw DimensionError("grid function has " + std::to_string(values_.size()) +
                         " values, grid has " + std::to_string(grid_.num_points()) +
                         " points");
  }
}

bool GridFunction::all_finite() const noexcept {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) {
    throw DimensionError("grid functions live on different grids (" +
                         std::to_string(a.grid().num_points()) + " vs " +
                         std::to_string(b.grid().num_points()) + " points)");
  }
}

}  // namespace gbsolve

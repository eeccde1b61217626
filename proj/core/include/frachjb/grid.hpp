#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace frachjb {

/// A point of the periodic box. In one dimension the second coordinate is 0.
using Point = std::array<double, 2>;

/// Uniform periodic grid on [0, L)^dim with a power-of-two number of nodes
/// per axis. Indices wrap modulo points_per_axis on every axis.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, std::size_t points_per_axis, double length);

  int dim() const { return dim_; }
  std::size_t points_per_axis() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return spacing_; }
  /// Total number of nodes, points_per_axis^dim.
  std::size_t size() const { return dim_ == 1 ? n_ : n_ * n_; }

  std::size_t wrap(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(n_);
    const std::ptrdiff_t r = i % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
  }
  /// Row-major flat index; axis 0 varies slowest.
  std::size_t flat(std::size_t i0, std::size_t i1 = 0) const {
    return dim_ == 1 ? i0 : i0 * n_ + i1;
  }
  std::array<std::size_t, 2> multi(std::size_t flat_index) const {
    if (dim_ == 1) return {flat_index, 0};
    return {flat_index / n_, flat_index % n_};
  }
  /// Flat index of the node displaced by (d0, d1) lattice steps from `flat_index`.
  std::size_t shifted(std::size_t flat_index, std::ptrdiff_t d0, std::ptrdiff_t d1 = 0) const;

  Point node(std::size_t flat_index) const;

  /// Shortest periodic separation of two coordinates along one axis.
  double periodic_distance(double a, double b) const;

  bool operator==(const PeriodicGrid& other) const = default;

 private:
  int dim_;
  std::size_t n_;
  double length_;
  double spacing_;
};

/// Real-valued grid function. All values are finite.
class GridField {
 public:
  explicit GridField(const PeriodicGrid& grid, double fill = 0.0);
  GridField(const PeriodicGrid& grid, std::vector<double> values);

  const PeriodicGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  /// Throws NumericalError naming the first non-finite node.
  void check_finite(const std::string& context) const;

  GridField& operator+=(const GridField& other);
  GridField& operator-=(const GridField& other);
  GridField& operator*=(double scale);

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double scale, GridField a);
GridField operator-(GridField a);

/// Time-indexed sequence of fields on one grid; times[0] need not be 0 for
/// derived trajectories (windows), but solver output always starts at 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<GridField> fields;
  /// Diagnostics recorded while the trajectory was produced.
  std::vector<std::string> warnings;

  const PeriodicGrid& grid() const;
  std::size_t size() const { return times.size(); }
  /// Checks the ordering and shared-grid invariants.
  void validate() const;
};

using PointFunction = std::function<double(const Point&)>;

/// Evaluates f at every node; rejects non-finite results naming the node.
GridField sample(const PeriodicGrid& grid, const PointFunction& f);

/// max over nodes of |a - b|.
double sup_dist(const GridField& a, const GridField& b);
double sup_norm(const GridField& a);

/// Periodic central difference (u[i+1] - u[i-1]) / (2h), one field per axis.
std::vector<GridField> discrete_gradient(const GridField& field);

/// Largest nearest-neighbour slope |u[i+1] - u[i]| / h over all axes.
double lipschitz_constant(const GridField& field);

/// Circular shift by whole lattice steps: result(x) = field(x + d h).
GridField shift_nodes(const GridField& field, std::ptrdiff_t d0, std::ptrdiff_t d1 = 0);

/// CSV with header `x_0[,x_1],value`, row-major, 17 significant digits.
void write_csv(std::ostream& out, const GridField& field);
std::string format_double(double value);

}  // namespace frachjb

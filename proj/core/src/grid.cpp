#include "frachjb/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "frachjb/errors.hpp"

namespace frachjb {

PeriodicGrid::PeriodicGrid(int dim, std::size_t points_per_axis, double length)
    : dim_(dim), n_(points_per_axis), length_(length), spacing_(length / static_cast<double>(points_per_axis)) {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2, got " + std::to_string(dim));
  if (points_per_axis < 4 || !std::has_single_bit(points_per_axis)) {
    throw ConfigError("points_per_axis must be a power of two >= 4, got " + std::to_string(points_per_axis));
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("grid length must be positive and finite");
}

std::size_t PeriodicGrid::shifted(std::size_t flat_index, std::ptrdiff_t d0, std::ptrdiff_t d1) const {
  const auto m = multi(flat_index);
  if (dim_ == 1) return wrap(static_cast<std::ptrdiff_t>(m[0]) + d0);
  return flat(wrap(static_cast<std::ptrdiff_t>(m[0]) + d0), wrap(static_cast<std::ptrdiff_t>(m[1]) + d1));
}

Point PeriodicGrid::node(std::size_t flat_index) const {
  const auto m = multi(flat_index);
  return {static_cast<double>(m[0]) * spacing_, dim_ == 1 ? 0.0 : static_cast<double>(m[1]) * spacing_};
}

double PeriodicGrid::periodic_distance(double a, double b) const {
  double d = std::fmod(std::abs(a - b), length_);
  return std::min(d, length_ - d);
}

GridField::GridField(const PeriodicGrid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

GridField::GridField(const PeriodicGrid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("field has " + std::to_string(values_.size()) + " values but grid has " +
                      std::to_string(grid_.size()) + " nodes");
  }
}

void GridField::check_finite(const std::string& context) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      const Point x = grid_.node(i);
      std::ostringstream msg;
      msg << context << ": non-finite value at node " << i << " (x = " << x[0];
      if (grid_.dim() == 2) msg << ", " << x[1];
      msg << ")";
      throw NumericalError(msg.str());
    }
  }
}

namespace {
void require_same_grid(const GridField& a, const GridField& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("grid mismatch between fields");
}
}  // namespace

GridField& GridField::operator+=(const GridField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridField& GridField::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double scale, GridField a) { return a *= scale; }
GridField operator-(GridField a) { return a *= -1.0; }

const PeriodicGrid& Trajectory::grid() const {
  if (fields.empty()) throw ConfigError("empty trajectory has no grid");
  return fields.front().grid();
}

void Trajectory::validate() const {
  if (times.size() != fields.size()) throw ConfigError("trajectory times and fields differ in length");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw ConfigError("trajectory times must be strictly increasing");
    if (!(fields[k].grid() == fields[0].grid())) throw ConfigError("trajectory fields must share one grid");
  }
}

GridField sample(const PeriodicGrid& grid, const PointFunction& f) {
  GridField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid.node(i));
  out.check_finite("sample");
  return out;
}

double sup_dist(const GridField& a, const GridField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sup_norm(const GridField& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<GridField> discrete_gradient(const GridField& field) {
  const PeriodicGrid& g = field.grid();
  const double inv2h = 1.0 / (2.0 * g.spacing());
  std::vector<GridField> out;
  for (int axis = 0; axis < g.dim(); ++axis) {
    GridField d(g);
    const std::ptrdiff_t d0 = axis == 0 ? 1 : 0;
    const std::ptrdiff_t d1 = axis == 1 ? 1 : 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      d[i] = (field[g.shifted(i, d0, d1)] - field[g.shifted(i, -d0, -d1)]) * inv2h;
    }
    out.push_back(std::move(d));
  }
  return out;
}

double lipschitz_constant(const GridField& field) {
  const PeriodicGrid& g = field.grid();
  double m = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const std::ptrdiff_t d0 = axis == 0 ? 1 : 0;
    const std::ptrdiff_t d1 = axis == 1 ? 1 : 0;
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(field[g.shifted(i, d0, d1)] - field[i]));
  }
  return m / g.spacing();
}

GridField shift_nodes(const GridField& field, std::ptrdiff_t d0, std::ptrdiff_t d1) {
  const PeriodicGrid& g = field.grid();
  GridField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = field[g.shifted(i, d0, d1)];
  return out;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const GridField& field) {
  const PeriodicGrid& g = field.grid();
  out << (g.dim() == 1 ? "x_0,value\n" : "x_0,x_1,value\n");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.node(i);
    out << format_double(x[0]) << ',';
    if (g.dim() == 2) out << format_double(x[1]) << ',';
    out << format_double(field[i]) << '\n';
  }
}

}  // namespace frachjb

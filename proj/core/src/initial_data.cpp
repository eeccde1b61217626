#include "frachjb/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "frachjb/errors.hpp"

namespace frachjb {

namespace {

constexpr double kPi = std::numbers::pi;

double profile(const std::string& name, double x, double L) {
  const double w = 2.0 * kPi * x / L;
  if (name == "triangle") return std::min(x, L - x);
  if (name == "sine") return std::sin(w);
  if (name == "exp_sin") return std::exp(std::sin(w));
  if (name == "abs_sin") return std::abs(std::sin(w));
  if (name == "cos_mix") return std::sin(w) + std::cos(3.0 * w);
  if (name == "zero") return 0.0;
  throw ConfigError("unknown initial datum '" + name + "'");
}

struct Mode {
  int k0, k1;
  double amp, phase;
};

std::vector<Mode> random_modes(int dim, double lipschitz, double L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::vector<Mode> modes;
  double slope_sum = 0.0;
  for (int k = 1; k <= 8; ++k) {
    Mode m{k, 0, unit(rng) / k, phase(rng)};
    if (dim == 2) {
      std::uniform_int_distribution<int> pick(-k, k);
      m.k1 = pick(rng);
    }
    slope_sum += std::abs(m.amp) * std::hypot(m.k0, m.k1) * 2.0 * kPi / L;
    modes.push_back(m);
  }
  std::uniform_real_distribution<double> frac(0.3, 1.0);
  const double scale = lipschitz * frac(rng) / slope_sum;
  for (Mode& m : modes) m.amp *= scale;
  return modes;
}

GridField from_modes(const PeriodicGrid& grid, const std::vector<Mode>& modes) {
  const double L = grid.length();
  return sample(grid, [&](const Point& x) {
    double v = 0.0;
    for (const Mode& m : modes) v += m.amp * std::sin(2.0 * kPi * (m.k0 * x[0] + m.k1 * x[1]) / L + m.phase);
    return v;
  });
}

}  // namespace

GridField initial_datum(const PeriodicGrid& grid, const std::string& name) {
  profile(name, 0.0, grid.length());
  const double L = grid.length();
  return sample(grid, [&](const Point& x) {
    double v = profile(name, x[0], L);
    if (grid.dim() == 2) v += profile(name, x[1], L);
    return v;
  });
}

const std::vector<std::string>& initial_datum_names() {
  static const std::vector<std::string> names{"triangle", "sine", "exp_sin", "abs_sin", "cos_mix", "zero"};
  return names;
}

GridField random_lipschitz_field(const PeriodicGrid& grid, double lipschitz, std::uint64_t seed) {
  if (!(lipschitz > 0.0)) throw ConfigError("random_lipschitz_field: lipschitz must be positive");
  std::mt19937_64 rng(seed);
  return from_modes(grid, random_modes(grid.dim(), lipschitz, grid.length(), rng));
}

std::pair<GridField, GridField> random_ordered_pair(const PeriodicGrid& grid, double lipschitz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GridField u = from_modes(grid, random_modes(grid.dim(), lipschitz, grid.length(), rng));
  GridField bump = from_modes(grid, random_modes(grid.dim(), lipschitz, grid.length(), rng));
  double lo = bump[0];
  for (double b : bump.values()) lo = std::min(lo, b);
  std::uniform_real_distribution<double> lift(0.0, 0.2);
  const double offset = -lo + lift(rng);
  GridField v = u;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += bump[i] + offset;
  return {std::move(u), std::move(v)};
}

}  // namespace frachjb

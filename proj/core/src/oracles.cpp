#include "frachjb/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "frachjb/errors.hpp"
#include "frachjb/parallel.hpp"
#include "frachjb/spectral.hpp"

namespace frachjb {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_lattice_multiple(double v, double h, long& cells) {
  const double q = v / h;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) return false;
  cells = static_cast<long>(r);
  return true;
}

}  // namespace

OracleResult fractional_heat_exact(const GridField& u0, FractionalOrder s, double eps, double t) {
  if (!(t >= 0.0)) throw ConfigError("fractional_heat_exact: t must be >= 0");
  if (!(eps >= 0.0)) throw ConfigError("fractional_heat_exact: eps must be >= 0");
  const double tau = eps * t;
  const double L = u0.grid().length();
  const double sv = s.value();
  GridField out = tau == 0.0 ? u0 : apply_multiplier(u0, [&](const WaveVector& k) -> std::complex<double> {
    return std::exp(-tau * std::pow(frequency_magnitude(k, L), sv));
  });
  return {std::move(out), 1e-12 * sup_norm(u0)};
}

PoissonCheck poisson_kernel_check(const GridField& u0, double eps, double t, const std::vector<std::size_t>& nodes) {
  const PeriodicGrid& grid = u0.grid();
  if (grid.dim() != 1) throw ConfigError("poisson_kernel_check: one-dimensional grids only");
  if (!(t > 0.0)) throw ConfigError("poisson_kernel_check: t must be positive");
  if (!(eps > 0.0)) throw ConfigError("poisson_kernel_check: eps must be positive");
  const double tau = eps * t;
  const double L = grid.length();
  const double h = grid.spacing();
  const std::size_t n = grid.size();
  constexpr int kImages = 20;

  // Periodized kernel at each lattice separation, images |m| <= 20 summed
  // directly and the remainder by the midpoint rule with one correction term.
  std::vector<double> kernel(n);
  double tail_bound = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) * h;
    double sum = 0.0;
    for (int m = -kImages; m <= kImages; ++m) {
      const double y = x + m * L;
      sum += tau / (kPi * (tau * tau + y * y));
    }
    const double a = kImages + 0.5;
    const double yp = x + a * L;
    const double ym = a * L - x;
    const double integral = (0.5 * kPi - std::atan(yp / tau) + 0.5 * kPi - std::atan(ym / tau)) / (kPi * L);
    const double fp = -2.0 * tau * yp * L / (kPi * std::pow(tau * tau + yp * yp, 2));
    const double fm = -2.0 * tau * ym * L / (kPi * std::pow(tau * tau + ym * ym, 2));
    const double correction = (fp + fm) / 24.0;
    sum += integral + correction;
    kernel[j] = sum;
    tail_bound = std::max(tail_bound, std::abs(correction));
  }

  const GridField reference = fractional_heat_exact(u0, FractionalOrder(1.0), eps, t).field;
  std::vector<std::size_t> checked = nodes;
  if (checked.empty()) {
    checked.resize(n);
    for (std::size_t i = 0; i < n; ++i) checked[i] = i;
  }
  std::vector<double> deviation(checked.size());
  parallel_for(checked.size(), [&](std::size_t c) {
    const std::size_t i = checked[c];
    if (i >= n) throw ConfigError("poisson_kernel_check: node index out of range");
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += kernel[(i + n - j) % n] * u0[j];
    deviation[c] = std::abs(h * acc - reference[i]);
  });

  PoissonCheck out;
  out.max_deviation = deviation.empty() ? 0.0 : *std::max_element(deviation.begin(), deviation.end());
  // Trapezoid aliasing decays like exp(-tau * 2 pi n / L); the image tail
  // after correction is a small fraction of the correction itself.
  double l1 = 0.0;
  for (double v : u0.values()) l1 += std::abs(v) * h;
  const double aliasing = 2.0 * std::exp(-tau * 2.0 * kPi * static_cast<double>(n) / L) /
                          (1.0 - std::exp(-tau * 2.0 * kPi * static_cast<double>(n) / L));
  out.truncation_bound = l1 * 0.1 * tail_bound + sup_norm(u0) * aliasing;
  return out;
}

OracleResult hopf_lax(const GridField& u0, const HamiltonianSpec& spec, double t) {
  if (!spec.convex_in_p || !spec.p_only || !spec.conjugate || spec.lambda != 0.0 || spec.lipschitz_tx != 0.0) {
    throw ConfigError("hopf_lax requires a convex Hamiltonian of p alone with a finite conjugate (got '" +
                      spec.name + "')");
  }
  if (!(t > 0.0)) throw ConfigError("hopf_lax: t must be positive");
  const PeriodicGrid& grid = u0.grid();
  const double h = grid.spacing();
  const double lip = lipschitz_constant(u0);
  const double cone = t * spec.max_speed(lip) + 2.0 * h;
  const auto reach = static_cast<std::ptrdiff_t>(std::floor(cone / h + 1e-12));

  struct Candidate {
    std::ptrdiff_t d0, d1;
    double cost;
  };
  std::vector<Candidate> offsets;
  const std::ptrdiff_t reach1 = grid.dim() == 2 ? reach : 0;
  for (std::ptrdiff_t d0 = -reach; d0 <= reach; ++d0) {
    for (std::ptrdiff_t d1 = -reach1; d1 <= reach1; ++d1) {
      const double y0 = static_cast<double>(d0) * h;
      const double y1 = static_cast<double>(d1) * h;
      if (std::hypot(y0, y1) > cone) continue;
      const double cost = t * spec.conjugate(Point{y0 / t, y1 / t});
      if (std::isfinite(cost)) offsets.push_back({d0, d1, cost});
    }
  }
  if (offsets.empty()) throw NumericalError("hopf_lax: empty search cone");

  GridField out(grid);
  const std::size_t size = grid.size();
  parallel_for(size, [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (const Candidate& c : offsets) best = std::min(best, u0[grid.shifted(i, -c.d0, -c.d1)] + c.cost);
    out[i] = best;
  });
  return {std::move(out), h * (1.0 + lip)};
}

OracleResult transport_exact(const GridField& u0, const Point& a, double t) {
  const PeriodicGrid& grid = u0.grid();
  const double h = grid.spacing();
  long c0 = 0, c1 = 0;
  const bool exact0 = is_lattice_multiple(a[0] * t, h, c0);
  const bool exact1 = grid.dim() == 1 || is_lattice_multiple(a[1] * t, h, c1);
  if (exact0 && exact1) return {shift_nodes(u0, -c0, grid.dim() == 2 ? -c1 : 0), 0.0};

  const double L = grid.length();
  const double scale = 2.0 * kPi / L;
  const double s0 = a[0] * t;
  const double s1 = grid.dim() == 2 ? a[1] * t : 0.0;
  const long half = static_cast<long>(grid.points_per_axis() / 2);
  // Per axis: a phase factor, or a cosine on the Nyquist line where the real
  // interpolant shifts as cos(xi (x - s)) and its sine part vanishes on nodes.
  auto axis_factor = [&](long k, double shift) -> std::complex<double> {
    const double w = scale * static_cast<double>(k) * shift;
    if (std::labs(k) == half) return std::cos(w);
    return std::polar(1.0, -w);
  };
  GridField out = apply_multiplier(u0, [&](const WaveVector& k) -> std::complex<double> {
    return axis_factor(k.k0, s0) * (grid.dim() == 2 ? axis_factor(k.k1, s1) : 1.0);
  });
  // Accuracy proxy: the interpolant's content in the top half of the band.
  const GridField high = apply_multiplier(u0, [&](const WaveVector& k) -> std::complex<double> {
    const long m = std::max(std::labs(k.k0), std::labs(k.k1));
    return m > half / 2 ? 1.0 : 0.0;
  });
  return {std::move(out), 2.0 * sup_norm(high)};
}

}  // namespace frachjb

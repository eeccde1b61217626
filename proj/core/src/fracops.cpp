#include "frachjb/fracops.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "frachjb/errors.hpp"
#include "frachjb/spectral.hpp"

namespace frachjb {

namespace {
constexpr double kPi = std::numbers::pi;
}

FractionalOrder::FractionalOrder(double s) : s_(s) {
  if (!(s >= 1.0 && s <= 2.0)) throw ConfigError("fractional order s must lie in [1, 2], got " + format_double(s));
}

std::string to_string(BackendKind kind) { return kind == BackendKind::spectral ? "spectral" : "quadrature"; }

BackendKind backend_kind_from_string(const std::string& name) {
  if (name == "spectral") return BackendKind::spectral;
  if (name == "quadrature") return BackendKind::quadrature;
  throw ConfigError("operator.kind must be spectral or quadrature, got '" + name + "'");
}

double OperatorBackend::resolved_kappa(const PeriodicGrid& grid) const {
  return kappa > 0.0 ? kappa : 8.0 * grid.spacing();
}

double normalization_constant(int dim, double s) {
  if (s >= 2.0) return 0.0;
  const double n = dim;
  return std::pow(2.0, s) * std::tgamma((n + s) / 2.0) /
         (std::pow(kPi, n / 2.0) * std::abs(std::tgamma(-s / 2.0)));
}

double reduced_normalization(int dim, double s) {
  // 1/|Gamma(-s/2)| = s (2 - s) / (4 Gamma(2 - s/2)) removes the 2 - s factor.
  const double n = dim;
  return std::pow(2.0, s) * std::tgamma((n + s) / 2.0) * s / (4.0 * std::pow(kPi, n / 2.0) * std::tgamma(2.0 - s / 2.0));
}

QuadratureStencil::QuadratureStencil(const PeriodicGrid& grid, double s, double kappa)
    : grid_(grid), s_(s), kappa_(kappa), far_(grid.size(), 0.0) {}

std::shared_ptr<const QuadratureStencil> QuadratureStencil::build(const PeriodicGrid& grid, FractionalOrder order,
                                                                  double kappa) {
  const double h = grid.spacing();
  if (kappa < 2.0 * h * (1.0 - 1e-12)) {
    throw ConfigError("operator.kappa = " + format_double(kappa) + " is below 2 * spacing = " + format_double(2.0 * h));
  }
  if (kappa >= grid.length() / 2.0) {
    throw ConfigError("operator.kappa = " + format_double(kappa) + " must be below half the domain length");
  }
  using Key = std::tuple<int, std::size_t, double, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureStencil>> cache;
  const Key key{grid.dim(), grid.points_per_axis(), grid.length(), order.value(), kappa};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::shared_ptr<QuadratureStencil> st(new QuadratureStencil(grid, order.value(), kappa));
  if (grid.dim() == 1) {
    st->build_1d();
  } else {
    st->build_2d();
  }
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(st)).first->second;
}

void QuadratureStencil::build_1d() {
  const double h = grid_.spacing();
  const auto n = static_cast<std::ptrdiff_t>(grid_.points_per_axis());
  const double c = normalization_constant(1, s_);
  const double cr = reduced_normalization(1, s_);
  const auto m = static_cast<std::ptrdiff_t>(std::floor(kappa_ / h + 1e-9));

  // First cell [0, 3h/2]: second difference times the exact integral of y^{1-s}.
  near_.push_back({1, 0, cr * std::pow(1.5 * h, 2.0 - s_) / (h * h)});
  for (std::ptrdiff_t q = 2; q <= m; ++q) {
    near_.push_back({q, 0, c * std::pow(h, -s_) * std::pow(static_cast<double>(q), -1.0 - s_)});
  }
  double diag = 0.0;
  for (const auto& o : near_) diag += 2.0 * o.weight;

  if (c > 0.0) {
    // sum_{k >= k0} (r + k n)^{-1-s} = n^{-1-s} zeta(1+s, r/n + k0), k0 skips near offsets.
    const double scale = c * std::pow(h, -s_) * std::pow(static_cast<double>(n), -1.0 - s_);
    auto image_sum = [&](std::ptrdiff_t r) {
      const double k0 = r > m ? 0.0 : 1.0;
      return gsl_sf_hzeta(1.0 + s_, static_cast<double>(r) / static_cast<double>(n) + k0);
    };
    for (std::ptrdiff_t j = 1; j < n; ++j) {
      far_[static_cast<std::size_t>(j)] = scale * (image_sum(j) + image_sum(n - j));
      diag += far_[static_cast<std::size_t>(j)];
    }
  }
  diagonal_ = diag;
}

void QuadratureStencil::build_2d() {
  const double h = grid_.spacing();
  const auto n = static_cast<std::ptrdiff_t>(grid_.points_per_axis());
  const double c = normalization_constant(2, s_);
  const double cr = reduced_normalization(2, s_);
  const double kq = kappa_ / h;

  // Origin plus its four neighbours are replaced by a disk of equal area on
  // which the integrand is expanded to second order (five-point Laplacian).
  const double r0 = h * std::sqrt(5.0 / kPi);
  const double w_nb = cr * kPi * std::pow(r0, 2.0 - s_) / (2.0 * h * h);
  near_.push_back({1, 0, w_nb});
  near_.push_back({0, 1, w_nb});
  const auto mq = static_cast<std::ptrdiff_t>(std::floor(kq + 1e-9));
  auto is_near = [&](std::ptrdiff_t a, std::ptrdiff_t b) {
    return static_cast<double>(a * a + b * b) <= kq * kq * (1.0 + 1e-12);
  };
  auto point_weight = [&](std::ptrdiff_t a, std::ptrdiff_t b) {
    const double r = h * std::hypot(static_cast<double>(a), static_cast<double>(b));
    return c * h * h * std::pow(r, -2.0 - s_);
  };
  for (std::ptrdiff_t a = 0; a <= mq; ++a) {
    for (std::ptrdiff_t b = -mq; b <= mq; ++b) {
      if (a == 0 && b <= 0) continue;
      if (std::abs(a) + std::abs(b) == 1) continue;
      if (!is_near(a, b)) continue;
      near_.push_back({a, b, point_weight(a, b)});
    }
  }
  double diag = 0.0;
  for (const auto& o : near_) diag += 2.0 * o.weight;

  if (c > 0.0) {
    const std::ptrdiff_t q_max = 8 * n + n / 2;
    for (std::ptrdiff_t a = -q_max; a <= q_max; ++a) {
      for (std::ptrdiff_t b = -q_max; b <= q_max; ++b) {
        if (is_near(a, b) || (a == 0 && b == 0)) continue;
        const std::size_t idx = grid_.flat(grid_.wrap(a), grid_.wrap(b));
        far_[idx] += point_weight(a, b);
      }
    }
    // Images outside the box [-A, A]^2 contribute a uniform weight per residue:
    // (1 / L^2) * C h^2 * int_{outside} |y|^{-2-s} dy = 8 A^{-s} / s * int_0^{pi/4} cos^s.
    const double half_side = (static_cast<double>(q_max) + 0.5) * h;
    const int panels = 64;
    double simpson = 0.0;
    for (int k = 0; k <= panels; ++k) {
      const double th = (kPi / 4.0) * k / panels;
      const double wk = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      simpson += wk * std::pow(std::cos(th), s_);
    }
    simpson *= (kPi / 4.0) / (3.0 * panels);
    const double outside = 8.0 * std::pow(half_side, -s_) / s_ * simpson;
    const double tail = c * h * h * outside / (grid_.length() * grid_.length());
    for (std::size_t idx = 1; idx < far_.size(); ++idx) far_[idx] += tail;
    far_[0] = 0.0;
    for (double w : far_) diag += w;
  }
  diagonal_ = diag;
}

void QuadratureStencil::apply_near(std::span<const double> u, std::span<double> out) const {
  const std::size_t size = grid_.size();
  for (std::size_t i = 0; i < size; ++i) {
    double acc = 0.0;
    for (const auto& o : near_) {
      acc += o.weight * ((u[i] - u[grid_.shifted(i, o.d0, o.d1)]) + (u[i] - u[grid_.shifted(i, -o.d0, -o.d1)]));
    }
    out[i] = acc;
  }
}

void QuadratureStencil::apply_far(std::span<const double> u, std::span<double> out) const {
  const std::size_t size = grid_.size();
  if (grid_.dim() == 1) {
    const double* w = far_.data();
    for (std::size_t i = 0; i < size; ++i) {
      const double ui = u[i];
      double acc = 0.0;
      // Offsets j with i + j < n, then the wrapped remainder.
      for (std::size_t j = 1; j < size - i; ++j) acc += w[j] * (ui - u[i + j]);
      for (std::size_t j = size - i; j < size; ++j) acc += w[j] * (ui - u[i + j - size]);
      out[i] = acc;
    }
    return;
  }
  const std::size_t n = grid_.points_per_axis();
  for (std::size_t i = 0; i < size; ++i) {
    const auto mi = grid_.multi(i);
    const double ui = u[i];
    double acc = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t row = ((mi[0] + a) % n) * n;
      for (std::size_t b = 0; b < n; ++b) {
        acc += far_[a * n + b] * (ui - u[row + (mi[1] + b) % n]);
      }
    }
    out[i] = acc;
  }
}

FractionalOperator::FractionalOperator(const PeriodicGrid& grid, FractionalOrder order, const OperatorBackend& backend)
    : grid_(grid), order_(order), backend_(backend) {
  if (backend.kind == BackendKind::quadrature) {
    stencil_ = QuadratureStencil::build(grid, order, backend.resolved_kappa(grid));
  }
}

GridField FractionalOperator::apply(const GridField& u) const {
  if (!(u.grid() == grid_)) throw ConfigError("field grid does not match the operator grid");
  if (!stencil_) return apply_spectral(u, order_);
  GridField near(grid_), far(grid_);
  stencil_->apply_near(u.values(), near.values());
  stencil_->apply_far(u.values(), far.values());
  return near += far;
}

double FractionalOperator::spectral_radius_bound() const {
  const double s = order_.value();
  const double nyquist = std::pow(kPi / grid_.spacing(), s);
  if (!stencil_) return grid_.dim() == 1 ? nyquist : std::pow(2.0, s / 2.0) * nyquist;
  return std::max(nyquist, stencil_->diagonal());
}

GridField apply_spectral(const GridField& u, FractionalOrder s) {
  const double L = u.grid().length();
  const double p = s.value();
  return apply_multiplier(u, [&](const WaveVector& k) { return std::complex<double>(std::pow(frequency_magnitude(k, L), p)); });
}

GridField apply_quadrature(const GridField& u, FractionalOrder s, const OperatorBackend& backend) {
  OperatorBackend q = backend;
  q.kind = BackendKind::quadrature;
  return FractionalOperator(u.grid(), s, q).apply(u);
}

GridField apply_operator(const GridField& u, FractionalOrder s, const OperatorBackend& backend) {
  return FractionalOperator(u.grid(), s, backend).apply(u);
}

SplitParts split_parts(const GridField& test_fn, const GridField& u, FractionalOrder s, const OperatorBackend& backend,
                       double eps) {
  if (!(test_fn.grid() == u.grid())) throw ConfigError("split_parts: grid mismatch between test function and solution");
  auto stencil = QuadratureStencil::build(u.grid(), s, backend.resolved_kappa(u.grid()));
  SplitParts parts{GridField(u.grid()), GridField(u.grid())};
  stencil->apply_near(test_fn.values(), parts.near.values());
  stencil->apply_far(u.values(), parts.far.values());
  parts.near *= eps;
  parts.far *= eps;
  return parts;
}

GridField hilbert_transform(const GridField& u) {
  return apply_multiplier(u, [](const WaveVector& k) -> std::complex<double> {
    if (k.nyquist || k.k0 == 0) return 0.0;
    return {0.0, k.k0 > 0 ? -1.0 : 1.0};
  });
}

GridField spectral_derivative(const GridField& u, int axis) {
  const double scale = 2.0 * kPi / u.grid().length();
  return apply_multiplier(u, [&](const WaveVector& k) -> std::complex<double> {
    if (k.nyquist) return 0.0;
    return {0.0, scale * static_cast<double>(axis == 0 ? k.k0 : k.k1)};
  });
}

double riesz_identity_residual(const GridField& u) {
  if (u.grid().dim() != 1) throw ConfigError("riesz_identity_residual is defined for one-dimensional grids only");
  const GridField lhs = apply_spectral(u, FractionalOrder(1.0));
  const GridField rhs = hilbert_transform(spectral_derivative(u));
  return sup_dist(lhs, rhs);
}

}  // namespace frachjb

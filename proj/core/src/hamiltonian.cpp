#include "frachjb/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "frachjb/errors.hpp"

namespace frachjb {

namespace {

double norm(const Point& p, int dim) { return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]); }

struct Coefficient {
  std::function<double(double t, double x)> value;
  double bound;
  double lipschitz;  // w.r.t. |x - y| + |t - s|
};

const std::map<std::string, Coefficient>& coefficients() {
  static const std::map<std::string, Coefficient> table = {
      {"zero", {[](double, double) { return 0.0; }, 0.0, 0.0}},
      {"one", {[](double, double) { return 1.0; }, 1.0, 0.0}},
      {"sin_x", {[](double, double x) { return std::sin(x); }, 1.0, 1.0}},
      {"cos_x", {[](double, double x) { return std::cos(x); }, 1.0, 1.0}},
      {"sin_x_plus_t", {[](double t, double x) { return std::sin(x + t); }, 1.0, 1.0}},
      {"half_cos_x", {[](double, double x) { return 0.5 * std::cos(x); }, 0.5, 0.5}},
  };
  return table;
}

const Coefficient& coefficient(const std::string& name) {
  auto it = coefficients().find(name);
  if (it == coefficients().end()) throw ConfigError("unknown coefficient selector '" + name + "'");
  return it->second;
}

}  // namespace

const std::map<std::string, std::string>& coefficient_catalog() {
  static const std::map<std::string, std::string> names = {
      {"zero", "0"},           {"one", "1"},           {"sin_x", "sin(x)"},
      {"cos_x", "cos(x)"},     {"sin_x_plus_t", "sin(x + t)"}, {"half_cos_x", "cos(x) / 2"},
  };
  return names;
}

HamiltonianSpec make_catalog_hamiltonian(const std::string& kind, const CatalogParams& params) {
  const int dim = params.dim;
  if (dim != 1 && dim != 2) throw ConfigError("hamiltonian dimension must be 1 or 2");
  HamiltonianSpec spec;
  spec.name = kind;

  if (kind == "transport") {
    const Point a = params.a;
    if (!std::isfinite(a[0]) || !std::isfinite(a[1])) throw ConfigError("transport velocity must be finite");
    const double speed = norm(a, dim);
    spec.eval = [a, dim](double, const Point&, double, const Point& p) {
      return dim == 1 ? a[0] * p[0] : a[0] * p[0] + a[1] * p[1];
    };
    spec.lipschitz_p = [speed](double) { return speed; };
    spec.max_speed = spec.lipschitz_p;
    spec.convex_in_p = true;
    spec.p_only = true;
  } else if (kind == "eikonal") {
    spec.eval = [dim](double, const Point&, double, const Point& p) { return norm(p, dim); };
    spec.lipschitz_p = [](double) { return 1.0; };
    spec.max_speed = spec.lipschitz_p;
    spec.convex_in_p = true;
    spec.p_only = true;
    spec.conjugate = [dim](const Point& q) {
      return norm(q, dim) <= 1.0 + 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    };
  } else if (kind == "quadratic") {
    spec.eval = [dim](double, const Point&, double, const Point& p) { return 0.5 * norm(p, dim) * norm(p, dim); };
    spec.lipschitz_p = [](double r) { return r; };
    spec.max_speed = spec.lipschitz_p;
    spec.convex_in_p = true;
    spec.p_only = true;
    spec.conjugate = [dim](const Point& q) { return 0.5 * norm(q, dim) * norm(q, dim); };
  } else if (kind == "affine") {
    if (!(params.lambda >= 0.0)) {
      throw ConfigError("affine Hamiltonian requires lambda >= 0, got " + format_double(params.lambda));
    }
    const Coefficient& b = coefficient(params.b);
    const Coefficient& f = coefficient(params.f);
    const double lambda = params.lambda;
    auto bv = b.value;
    auto fv = f.value;
    spec.eval = [lambda, bv, fv, dim](double t, const Point& x, double u, const Point& p) {
      double drift = bv(t, x[0]) * p[0];
      if (dim == 2) drift += bv(t, x[1]) * p[1];
      return lambda * u + drift + fv(t, x[0]);
    };
    spec.lambda = lambda;
    const double root_dim = std::sqrt(static_cast<double>(dim));
    spec.lipschitz_tx = std::max(b.lipschitz * root_dim, f.lipschitz);
    const double speed = b.bound * root_dim;
    spec.lipschitz_p = [speed](double) { return speed; };
    spec.max_speed = spec.lipschitz_p;
    spec.convex_in_p = true;
    spec.p_only = (b.lipschitz == 0.0 && f.lipschitz == 0.0 && lambda == 0.0);
  } else if (kind == "zero") {
    spec.eval = [](double, const Point&, double, const Point&) { return 0.0; };
    spec.lipschitz_p = [](double) { return 0.0; };
    spec.max_speed = spec.lipschitz_p;
    spec.convex_in_p = true;
    spec.p_only = true;
  } else {
    throw ConfigError("hamiltonian.kind must be one of transport, eikonal, quadratic, affine, zero; got '" + kind + "'");
  }
  return spec;
}

HamiltonianSpec shift(const HamiltonianSpec& spec, const Point& ell) {
  HamiltonianSpec out = spec;
  auto inner = spec.eval;
  out.eval = [inner, ell](double t, const Point& x, double u, const Point& p) {
    return inner(t, Point{x[0] + ell[0], x[1] + ell[1]}, u, p);
  };
  return out;
}

double lax_friedrichs(const HamiltonianSpec& spec, const NumericalFlux& flux, double t, const Point& x, double u,
                      const Point& p_minus, const Point& p_plus) {
  const Point mid{0.5 * (p_minus[0] + p_plus[0]), 0.5 * (p_minus[1] + p_plus[1])};
  const double jump = (p_plus[0] - p_minus[0]) + (p_plus[1] - p_minus[1]);
  return spec.eval(t, x, u, mid) - 0.5 * flux.alpha * jump;
}

AssumptionReport verify_assumptions(const HamiltonianSpec& spec, std::size_t sample_budget, std::uint64_t seed,
                                    int dim) {
  if (sample_budget < 1000) throw ConfigError("verify_assumptions needs a sample budget of at least 1000");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  auto rand_point = [&](double scale) {
    Point p{scale * unit(rng), dim == 2 ? scale * unit(rng) : 0.0};
    return p;
  };
  auto rand_ball = [&](double r) {
    // Uniform direction, radius r * sqrt(U) in 2D, r * (2U - 1) in 1D.
    if (dim == 1) return Point{r * (2.0 * unit(rng) - 1.0), 0.0};
    const double th = two_pi * unit(rng);
    const double rr = r * std::sqrt(unit(rng));
    return Point{rr * std::cos(th), rr * std::sin(th)};
  };
  const double radii[] = {0.5, 1.0, 2.0, 5.0, 10.0};
  const double tol = 1e-9;

  AssumptionReport rep;
  for (std::size_t k = 0; k < sample_budget; ++k) {
    const double t = 2.0 * unit(rng);
    const Point x = rand_point(two_pi);
    const double r = radii[k % 5];
    const Point p = rand_ball(r);
    const double u = 20.0 * unit(rng) - 10.0;
    const double v = 20.0 * unit(rng) - 10.0;

    // A2
    const double lin = spec.eval(t, x, v, p) - spec.eval(t, x, u, p) - spec.lambda * (v - u);
    const double scale = 1.0 + std::abs(spec.lambda) * 10.0;
    rep.linearity_residual = std::max(rep.linearity_residual, std::abs(lin) / scale);

    // A3: half the pairs are close, half are arbitrary.
    double s = 2.0 * unit(rng);
    Point y = rand_point(two_pi);
    if (k % 2 == 0) {
      const double d = 1e-3 * unit(rng);
      s = t + d * (2.0 * unit(rng) - 1.0);
      y = Point{x[0] + d * (2.0 * unit(rng) - 1.0), dim == 2 ? x[1] + d * (2.0 * unit(rng) - 1.0) : 0.0};
    }
    const double dist = (dim == 1 ? std::abs(x[0] - y[0]) : std::hypot(x[0] - y[0], x[1] - y[1])) + std::abs(t - s);
    if (dist > 0.0) {
      const double dh = std::abs(spec.eval(t, x, u, p) - spec.eval(s, y, u, p));
      const double pn = dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
      const double allowed = spec.lipschitz_tx * (1.0 + pn) * dist;
      rep.tx_lipschitz_excess = std::max(rep.tx_lipschitz_excess, dh - allowed);
      rep.tx_ratio = std::max(rep.tx_ratio, dh / ((1.0 + pn) * dist));
    }

    // A4
    const Point q = rand_ball(r);
    const double dp = dim == 1 ? std::abs(p[0] - q[0]) : std::hypot(p[0] - q[0], p[1] - q[1]);
    if (dp > 0.0) {
      const double dh = std::abs(spec.eval(t, x, u, p) - spec.eval(t, x, u, q));
      const double ar = spec.lipschitz_p(r);
      rep.p_lipschitz_excess = std::max(rep.p_lipschitz_excess, dh - ar * dp);
      if (ar > 0.0) rep.p_ratio = std::max(rep.p_ratio, dh / (ar * dp));
    }
  }
  rep.samples = sample_budget;
  rep.pass = rep.linearity_residual <= tol && rep.tx_lipschitz_excess <= tol && rep.p_lipschitz_excess <= tol;
  return rep;
}

}  // namespace frachjb

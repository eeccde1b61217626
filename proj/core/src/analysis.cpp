#include "frachjb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frachjb/errors.hpp"
#include "frachjb/parallel.hpp"

namespace frachjb {

namespace {

constexpr double kTimeTol = 1e-12;

struct Offset {
  std::ptrdiff_t d0, d1;
  double dist;
};

/// Lattice offsets with 0 < |d| h <= radius; one representative per pair
/// {d, -d} when `half` is set.
std::vector<Offset> offsets_within(const PeriodicGrid& grid, double radius, bool half) {
  const double h = grid.spacing();
  const auto reach = static_cast<std::ptrdiff_t>(std::floor(radius / h + 1e-9));
  const std::ptrdiff_t reach1 = grid.dim() == 2 ? reach : 0;
  std::vector<Offset> out;
  for (std::ptrdiff_t d0 = -reach; d0 <= reach; ++d0) {
    for (std::ptrdiff_t d1 = -reach1; d1 <= reach1; ++d1) {
      if (d0 == 0 && d1 == 0) continue;
      if (half && (d0 < 0 || (d0 == 0 && d1 < 0))) continue;
      const double dist = h * std::hypot(static_cast<double>(d0), static_cast<double>(d1));
      if (dist <= radius * (1.0 + 1e-12)) out.push_back({d0, d1, dist});
    }
  }
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double resolved_window(const PeriodicGrid& grid, double window) {
  if (window < 0.0) throw ConfigError("Holder window must be nonnegative");
  const double w = window == 0.0 ? 0.25 * grid.length() : window;
  return std::min(w, 0.5 * grid.length());
}

/// Spatial part of the Holder sup over every snapshot.
double spatial_holder(const std::vector<const GridField*>& fields, double alpha, double window) {
  if (fields.empty()) return 0.0;
  const PeriodicGrid& grid = fields.front()->grid();
  const auto offsets = offsets_within(grid, window, true);
  std::vector<double> per(fields.size(), 0.0);
  parallel_for(fields.size(), [&](std::size_t k) {
    const GridField& w = *fields[k];
    double m = 0.0;
    for (const Offset& o : offsets) {
      const double denom = std::pow(o.dist, alpha);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        m = std::max(m, std::abs(w[grid.shifted(i, o.d0, o.d1)] - w[i]) / denom);
      }
    }
    per[k] = m;
  });
  return max_of(per);
}

/// Temporal part: same node, every pair of snapshots.
double temporal_holder(const std::vector<const GridField*>& fields, const std::vector<double>& times, double alpha) {
  std::vector<double> per(fields.size(), 0.0);
  parallel_for(fields.size(), [&](std::size_t k) {
    double m = 0.0;
    for (std::size_t j = k + 1; j < fields.size(); ++j) {
      const double denom = std::pow(times[j] - times[k], alpha);
      const GridField& a = *fields[k];
      const GridField& b = *fields[j];
      for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(b[i] - a[i]) / denom);
    }
    per[k] = m;
  });
  return max_of(per);
}

// By the triangle inequality through (t, y), the space-time quotient never
// exceeds the larger of the pure-space and pure-time quotients, and both
// are admissible pairs, so the sup splits exactly.
double holder_sup(const std::vector<const GridField*>& fields, const std::vector<double>& times, double alpha,
                  double window) {
  return std::max(spatial_holder(fields, alpha, window), temporal_holder(fields, times, alpha));
}

}  // namespace

Trajectory time_window(const Trajectory& traj, double t_a, double t_b) {
  Trajectory out;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.times[k] >= t_a - kTimeTol && traj.times[k] <= t_b + kTimeTol) {
      out.times.push_back(traj.times[k]);
      out.fields.push_back(traj.fields[k]);
    }
  }
  return out;
}

HolderReport holder_seminorm(const Trajectory& traj, double alpha, double t_a, double t_b, double window) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("Holder exponent must lie in (0, 1]");
  traj.validate();
  if (traj.size() == 0 || t_a > traj.times.back() + kTimeTol || t_b < traj.times.front() - kTimeTol) {
    throw ConfigError("Holder window lies outside the trajectory");
  }
  std::vector<const GridField*> fields;
  std::vector<double> times;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.times[k] >= t_a - kTimeTol && traj.times[k] <= t_b + kTimeTol) {
      fields.push_back(&traj.fields[k]);
      times.push_back(traj.times[k]);
    }
  }
  if (fields.empty()) throw ConfigError("Holder window contains no snapshot");
  const double w = resolved_window(traj.grid(), window);
  return {alpha, holder_sup(fields, times, alpha, w), w};
}

double c1alpha_norm(const Trajectory& traj, double t, double alpha, double window) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("Holder exponent must lie in (0, 1]");
  traj.validate();
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.times[k] > 0.5 * t + kTimeTol && traj.times[k] <= t + kTimeTol) idx.push_back(k);
  }
  if (idx.size() < 3) {
    throw ConfigError("c1alpha_norm needs at least 3 snapshots in (t/2, t]; found " + std::to_string(idx.size()));
  }
  const PeriodicGrid& grid = traj.grid();
  const double w = resolved_window(grid, window);

  double u_sup = 0.0;
  for (std::size_t k : idx) u_sup = std::max(u_sup, sup_norm(traj.fields[k]));

  std::vector<GridField> ut;
  std::vector<double> ut_times;
  for (std::size_t m = 0; m + 1 < idx.size(); ++m) {
    const std::size_t a = idx[m], b = idx[m + 1];
    const double dt = traj.times[b] - traj.times[a];
    ut.push_back((1.0 / dt) * (traj.fields[b] - traj.fields[a]));
    ut_times.push_back(0.5 * (traj.times[a] + traj.times[b]));
  }
  double ut_sup = 0.0;
  for (const GridField& f : ut) ut_sup = std::max(ut_sup, sup_norm(f));
  std::vector<const GridField*> ut_ptr;
  for (const GridField& f : ut) ut_ptr.push_back(&f);
  const double ut_semi = holder_sup(ut_ptr, ut_times, alpha, w);

  std::vector<std::vector<GridField>> grads;
  std::vector<double> grad_times;
  for (std::size_t k : idx) {
    grads.push_back(discrete_gradient(traj.fields[k]));
    grad_times.push_back(traj.times[k]);
  }
  double grad_sup = 0.0;
  for (const auto& g : grads) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grad_sup = std::max(grad_sup, std::hypot(g[0][i], grid.dim() == 2 ? g[1][i] : 0.0));
    }
  }
  double grad_semi = 0.0;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    std::vector<const GridField*> comp;
    for (const auto& g : grads) comp.push_back(&g[static_cast<std::size_t>(axis)]);
    grad_semi = std::max(grad_semi, holder_sup(comp, grad_times, alpha, w));
  }
  return u_sup + ut_sup + grad_sup + ut_semi + grad_semi;
}

Trajectory difference_quotient(const Trajectory& traj, double h, const Point& ell) {
  traj.validate();
  const PeriodicGrid& grid = traj.grid();
  const double norm = std::abs(h) * std::hypot(ell[0], grid.dim() == 2 ? ell[1] : 0.0);
  if (!(norm > 0.0)) throw ConfigError("difference_quotient: step must be nonzero");
  std::array<std::ptrdiff_t, 2> cells{0, 0};
  for (int a = 0; a < grid.dim(); ++a) {
    const double q = h * ell[static_cast<std::size_t>(a)] / grid.spacing();
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
      throw ConfigError("difference_quotient: h * ell must be a whole number of cells");
    }
    cells[static_cast<std::size_t>(a)] = static_cast<std::ptrdiff_t>(r);
  }
  Trajectory out;
  out.times = traj.times;
  for (const GridField& u : traj.fields) {
    out.fields.push_back((1.0 / norm) * (shift_nodes(u, cells[0], cells[1]) - u));
  }
  return out;
}

InequalityExcess advection_inequality_residuals(const Trajectory& w, double A, double B, double lambda, double eps,
                                                FractionalOrder order, const OperatorBackend& backend) {
  if (A < 0.0 || B < 0.0) throw ConfigError("advection_inequality_residuals: A and B must be nonnegative");
  w.validate();
  if (w.size() < 2) throw ConfigError("advection_inequality_residuals needs at least two snapshots");
  const PeriodicGrid& grid = w.grid();
  const double h = grid.spacing();
  FractionalOperator op(grid, order, backend);
  const std::size_t pairs = w.size() - 1;
  std::vector<double> sub(pairs, 0.0), super(pairs, 0.0);
  parallel_for(pairs, [&](std::size_t k) {
    const double dt = w.times[k + 1] - w.times[k];
    const GridField mid = 0.5 * (w.fields[k] + w.fields[k + 1]);
    GridField diffusion(grid);
    if (eps != 0.0) diffusion = op.apply(mid);
    double s = 0.0, p = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double g2m = 0.0, g2p = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const std::ptrdiff_t d0 = a == 0 ? 1 : 0;
        const std::ptrdiff_t d1 = a == 1 ? 1 : 0;
        const double dm = (mid[i] - mid[grid.shifted(i, -d0, -d1)]) / h;
        const double dp = (mid[grid.shifted(i, d0, d1)] - mid[i]) / h;
        g2m += dm * dm;
        g2p += dp * dp;
      }
      const double grad = std::sqrt(std::max(g2m, g2p));
      const double base = (w.fields[k + 1][i] - w.fields[k][i]) / dt + lambda * mid[i] + eps * diffusion[i];
      s = std::max(s, base - A * grad - B);
      p = std::max(p, -(base + A * grad + B));
    }
    sub[k] = s;
    super[k] = p;
  });
  return {max_of(sub), max_of(super)};
}

double convolution_radius(const Trajectory& traj, double delta) {
  if (!(delta > 0.0)) throw ConfigError("convolution parameter delta must be positive");
  double sup = 0.0;
  for (const GridField& f : traj.fields) sup = std::max(sup, sup_norm(f));
  return std::sqrt(delta * 2.0 * sup);
}

Trajectory sup_convolution(const Trajectory& traj, double delta) {
  traj.validate();
  const double gamma = convolution_radius(traj, delta);
  const PeriodicGrid& grid = traj.grid();
  const auto offsets = offsets_within(grid, std::min(gamma, 0.5 * grid.length()), false);
  Trajectory out;
  out.times = traj.times;
  out.fields.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    GridField result = traj.fields[k];
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const double dt = traj.times[j] - traj.times[k];
      if (std::abs(dt) > gamma) continue;
      const double t_pen = dt * dt / delta;
      const double rho2 = gamma * gamma - dt * dt;
      const GridField& src = traj.fields[j];
      parallel_for(grid.size(), [&](std::size_t i) {
        double best = result[i];
        if (j != k) best = std::max(best, src[i] - t_pen);
        for (const Offset& o : offsets) {
          if (o.dist * o.dist > rho2) continue;
          best = std::max(best, src[grid.shifted(i, o.d0, o.d1)] - (o.dist * o.dist) / delta - t_pen);
        }
        result[i] = best;
      });
    }
    out.fields.push_back(std::move(result));
  }
  return out;
}

Trajectory inf_convolution(const Trajectory& traj, double delta) {
  Trajectory neg;
  neg.times = traj.times;
  for (const GridField& f : traj.fields) neg.fields.push_back(-f);
  Trajectory sup = sup_convolution(neg, delta);
  for (GridField& f : sup.fields) f = -f;
  return sup;
}

OscillationReport oscillation_sequence(const Trajectory& traj, const CylinderSpec& cyl, double ratio, int kmax) {
  traj.validate();
  if (!(cyl.r > 0.0)) throw ConfigError("cylinder radius must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("oscillation ratio must lie in (0, 1)");
  if (kmax < 0) throw ConfigError("kmax must be nonnegative");
  if (cyl.t0 - cyl.r < traj.times.front() - kTimeTol || cyl.t0 > traj.times.back() + kTimeTol) {
    throw ConfigError("cylinder time span lies outside the trajectory");
  }
  const PeriodicGrid& grid = traj.grid();
  OscillationReport rep;
  for (int k = 0; k <= kmax; ++k) {
    const double r = cyl.r * std::pow(ratio, k);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t nodes = 0, snaps = 0;
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point x = grid.node(i);
      double d2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const double d = grid.periodic_distance(x[static_cast<std::size_t>(a)], cyl.x0[static_cast<std::size_t>(a)]);
        d2 += d * d;
      }
      if (std::sqrt(d2) <= r * (1.0 + 1e-12)) inside.push_back(i);
    }
    nodes = inside.size();
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const double t = traj.times[j];
      if (t < cyl.t0 - r - kTimeTol || t > cyl.t0 + kTimeTol) continue;
      ++snaps;
      for (std::size_t i : inside) {
        lo = std::min(lo, traj.fields[j][i]);
        hi = std::max(hi, traj.fields[j][i]);
      }
    }
    if (nodes < 2 || snaps < 2) {
      throw ConfigError("cylinder of radius " + format_double(r) + " is under-resolved (" + std::to_string(nodes) +
                        " nodes, " + std::to_string(snaps) + " snapshots)");
    }
    rep.radii.push_back(r);
    rep.oscillations.push_back(hi - lo);
  }
  for (std::size_t k = 0; k + 1 < rep.oscillations.size(); ++k) {
    const double o = rep.oscillations[k];
    rep.decay_factors.push_back(o > 0.0 ? rep.oscillations[k + 1] / o : 0.0);
  }
  std::vector<double> lx, ly;
  bool applicable = rep.oscillations.size() >= 3;
  for (std::size_t k = 1; k < rep.oscillations.size(); ++k) {
    if (!(rep.oscillations[k] > 0.0)) applicable = false;
    lx.push_back(std::log(rep.radii[k]));
    ly.push_back(std::log(rep.oscillations[k]));
  }
  if (applicable) {
    rep.fitted_alpha = least_squares_slope(lx, ly, &rep.fit_residual);
  } else {
    rep.fitted_alpha = std::numeric_limits<double>::quiet_NaN();
    rep.fit_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double RateModel::operator()(double eps) const {
  if (kind == Kind::eps_log) return eps * std::abs(std::log(eps));
  return std::pow(eps, q);
}

std::string RateModel::name() const {
  if (kind == Kind::eps_log) return "eps_log";
  return "eps_pow(" + format_double(q) + ")";
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y, double* residual) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("least squares fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("least squares fit needs distinct abscissae");
  const double slope = sxy / sxx;
  if (residual) {
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (my + slope * (x[i] - mx));
      r += e * e;
    }
    *residual = std::sqrt(r / n);
  }
  return slope;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points, const RateModel& model) {
  if (points.empty()) throw ConfigError("fit_rate: no points");
  for (const auto& [eps, err] : points) {
    if (!(eps > 0.0)) throw ConfigError("fit_rate: epsilon must be positive");
    if (model.kind == RateModel::Kind::eps_log && !(eps < std::exp(-1.0))) {
      throw ConfigError("fit_rate: the eps|log eps| model requires epsilon in (0, 1/e); got " + format_double(eps));
    }
    if (!(err >= 0.0)) throw ConfigError("fit_rate: errors must be nonnegative");
  }
  RateFit fit;
  std::size_t top = 0, bottom = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [eps, err] = points[i];
    fit.ratios.push_back(err / model(eps));
    fit.C_fit = std::max(fit.C_fit, fit.ratios.back());
    if (eps > points[top].first) top = i;
    if (eps < points[bottom].first) bottom = i;
    if (err > 0.0) {
      lx.push_back(std::log(eps));
      ly.push_back(std::log(err));
    }
  }
  const double r_top = fit.ratios[top];
  fit.max_ratio = r_top > 0.0 ? fit.C_fit / r_top : std::numeric_limits<double>::infinity();
  fit.slope = lx.size() >= 2 ? least_squares_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();
  fit.over_covers = fit.ratios[bottom] < 0.5 * r_top;
  return fit;
}

}  // namespace frachjb

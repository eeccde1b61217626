#include "frachjb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "frachjb/errors.hpp"

namespace frachjb {

namespace {

/// Spatial part of the scheme for one grid: F(u) = H^(t, x, 0, D-u, D+u) + eps A u.
class SpatialOperator {
 public:
  SpatialOperator(const PeriodicGrid& grid, const HamiltonianSpec& spec, const SolverConfig& config, double alpha)
      : grid_(grid), spec_(spec), epsilon_(config.epsilon), flux_{alpha},
        op_(config.epsilon != 0.0 ? std::optional<FractionalOperator>(std::in_place, grid, config.order, config.backend)
                                  : std::nullopt) {}

  /// Writes F(u) into `out` and returns max_i max(|D-u|, |D+u|) (Euclidean over axes).
  double evaluate(const GridField& u, double t, GridField& out) const {
    const double h = grid_.spacing();
    const int dim = grid_.dim();
    double max_grad = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      Point pm{0.0, 0.0}, pp{0.0, 0.0};
      for (int a = 0; a < dim; ++a) {
        const std::ptrdiff_t d0 = a == 0 ? 1 : 0;
        const std::ptrdiff_t d1 = a == 1 ? 1 : 0;
        pm[static_cast<std::size_t>(a)] = (u[i] - u[grid_.shifted(i, -d0, -d1)]) / h;
        pp[static_cast<std::size_t>(a)] = (u[grid_.shifted(i, d0, d1)] - u[i]) / h;
      }
      max_grad = std::max({max_grad, std::hypot(pm[0], pm[1]), std::hypot(pp[0], pp[1])});
      out[i] = lax_friedrichs(spec_, flux_, t, grid_.node(i), 0.0, pm, pp);
    }
    if (epsilon_ != 0.0) {
      const GridField a = op_->apply(u);
      for (std::size_t i = 0; i < grid_.size(); ++i) out[i] += epsilon_ * a[i];
    }
    return max_grad;
  }

 private:
  PeriodicGrid grid_;
  const HamiltonianSpec& spec_;
  double epsilon_;
  NumericalFlux flux_;
  std::optional<FractionalOperator> op_;
};

double phi(double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / z; }

void advance(const GridField& u, const GridField& f, double lambda, double dt, GridField& out) {
  const double decay = std::exp(-lambda * dt);
  const double weight = dt * phi(lambda * dt);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = decay * u[i] - weight * f[i];
}

double stable_dt_with(const SolverConfig& config, const PeriodicGrid& grid, const HamiltonianSpec& spec, double alpha,
                      double radius) {
  const double s = alpha * grid.dim() / grid.spacing() + config.epsilon * radius;
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  if (spec.lambda > 0.0) return std::log1p(spec.lambda * config.cfl_safety / s) / spec.lambda;
  return config.cfl_safety / s;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("solver.epsilon must be >= 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("solver.cfl must lie in (0, 1]");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) throw ConfigError("solver.T must be positive");
  for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
    const double t = snapshot_times[k];
    if (!(t >= 0.0 && t <= final_time)) throw ConfigError("solver.snapshots must lie in [0, T]");
    if (k > 0 && !(t > snapshot_times[k - 1])) throw ConfigError("solver.snapshots must be strictly increasing");
  }
}

double resolved_alpha(const SolverConfig& config, const HamiltonianSpec& spec, double lipschitz) {
  return config.flux.alpha > 0.0 ? config.flux.alpha : spec.lipschitz_p(lipschitz + 1.0);
}

double stable_dt(const SolverConfig& config, const PeriodicGrid& grid, const HamiltonianSpec& spec,
                 double current_lipschitz) {
  const double alpha = resolved_alpha(config, spec, current_lipschitz);
  const double radius = config.epsilon > 0.0
                            ? FractionalOperator(grid, config.order, config.backend).spectral_radius_bound()
                            : 0.0;
  return stable_dt_with(config, grid, spec, alpha, radius);
}

GridField step(const GridField& state, double t, double dt, const HamiltonianSpec& spec, const SolverConfig& config) {
  config.validate();
  const double lip = lipschitz_constant(state);
  const double limit = stable_dt(config, state.grid(), spec, lip);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw ConfigError("time step " + format_double(dt) + " exceeds the stable step " + format_double(limit));
  }
  SpatialOperator op(state.grid(), spec, config, resolved_alpha(config, spec, lip));
  GridField f(state.grid());
  op.evaluate(state, t, f);
  GridField out(state.grid());
  advance(state, f, spec.lambda, dt, out);
  return out;
}

Trajectory solve(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& config) {
  config.validate();
  u0.check_finite("solve: initial datum");
  const PeriodicGrid& grid = u0.grid();
  const double lip0 = lipschitz_constant(u0);
  const double alpha = resolved_alpha(config, spec, lip0);
  const double radius = config.epsilon > 0.0
                            ? FractionalOperator(grid, config.order, config.backend).spectral_radius_bound()
                            : 0.0;
  const double dt_max = stable_dt_with(config, grid, spec, alpha, radius);
  SpatialOperator op(grid, spec, config, alpha);

  // Crude a priori guard: |u(t)| <= |u0| + t sup|H(., ., 0, p)| e^{lambda t} over |p| <= R.
  const double T = config.final_time;
  const double R = lip0 + 1.0;
  double h_sup = 0.0;
  {
    const std::size_t stride = std::max<std::size_t>(1, grid.size() / 64);
    for (double tau : {0.0, 0.5 * T, T}) {
      for (std::size_t i = 0; i < grid.size(); i += stride) {
        for (int k = -4; k <= 4; ++k) {
          const double pk = R * k / 4.0;
          const Point p{pk, grid.dim() == 2 ? pk : 0.0};
          h_sup = std::max(h_sup, std::abs(spec.eval(tau, grid.node(i), 0.0, p)));
        }
      }
    }
  }
  const double u0_sup = sup_norm(u0);
  auto guard = [&](double t) {
    const double bound = u0_sup + t * h_sup * std::exp(spec.lambda * t);
    return bound + 0.05 * (1.0 + bound);
  };

  std::vector<double> targets;
  for (double t : config.snapshot_times) {
    if (t > 0.0 && t < T) targets.push_back(t);
  }
  targets.push_back(T);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.fields.push_back(u0);

  GridField u = u0;
  GridField f(grid), next(grid);
  double t = 0.0;
  std::size_t steps = 0;
  double max_grad = 0.0;
  for (double target : targets) {
    while (t < target) {
      double dt = dt_max;
      bool lands = false;
      if (t + dt >= target * (1.0 - 1e-14)) {
        dt = target - t;
        lands = true;
      }
      max_grad = std::max(max_grad, op.evaluate(u, t, f));
      advance(u, f, spec.lambda, dt, next);
      std::swap(u, next);
      t = lands ? target : t + dt;
      ++steps;

      for (double v : u.values()) {
        if (!std::isfinite(v)) {
          throw NumericalError("solve: non-finite value at t = " + format_double(t));
        }
      }
      if (sup_norm(u) > guard(t)) {
        throw NumericalError("solve: sup norm exceeds the a priori bound at t = " + format_double(t));
      }
      const bool on_stride = config.record_stride > 0 && steps % config.record_stride == 0 &&
                             t >= config.record_from * (1.0 - 1e-14);
      if (lands || on_stride) {
        if (traj.times.back() < t) {
          traj.times.push_back(t);
          traj.fields.push_back(u);
        }
      }
    }
  }
  if (spec.lipschitz_p(max_grad) > alpha * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "flux dissipation alpha = " << format_double(alpha) << " is below A_R = "
        << format_double(spec.lipschitz_p(max_grad)) << " at observed gradient " << format_double(max_grad)
        << "; the scheme may not be monotone";
    traj.warnings.push_back(msg.str());
  }
  return traj;
}

std::vector<double> residual(const Trajectory& traj, const HamiltonianSpec& spec, const SolverConfig& config) {
  traj.validate();
  if (traj.size() < 2) throw ConfigError("residual needs at least two snapshots");
  const PeriodicGrid& grid = traj.grid();
  FractionalOperator op(grid, config.order, config.backend);
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    const double tm = 0.5 * (traj.times[k] + traj.times[k + 1]);
    GridField um = 0.5 * (traj.fields[k] + traj.fields[k + 1]);
    const auto grad = discrete_gradient(um);
    GridField diffusion(grid);
    if (config.epsilon != 0.0) diffusion = op.apply(um);
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point p{grad[0][i], grid.dim() == 2 ? grad[1][i] : 0.0};
      const double r = (traj.fields[k + 1][i] - traj.fields[k][i]) / dt + spec.eval(tm, grid.node(i), um[i], p) +
                       config.epsilon * diffusion[i];
      sup = std::max(sup, std::abs(r));
    }
    out.push_back(sup);
  }
  return out;
}

std::vector<GridField> scheme_residual(const Trajectory& traj, const HamiltonianSpec& spec, const SolverConfig& config,
                                       double alpha) {
  traj.validate();
  if (traj.size() < 2) throw ConfigError("scheme_residual needs at least two snapshots");
  const PeriodicGrid& grid = traj.grid();
  SpatialOperator op(grid, spec, config, alpha);
  std::vector<GridField> out;
  GridField f(grid);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    op.evaluate(traj.fields[k], traj.times[k], f);
    GridField r(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      r[i] = (traj.fields[k + 1][i] - traj.fields[k][i]) / dt + spec.lambda * traj.fields[k][i] + f[i];
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace frachjb

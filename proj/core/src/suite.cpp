#include "frachjb/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "frachjb/errors.hpp"
#include "frachjb/initial_data.hpp"
#include "frachjb/parallel.hpp"

namespace frachjb {

namespace {

constexpr double kTimeTol = 1e-12;

double max_over(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

double trajectory_sup(const Trajectory& traj) {
  double m = 0.0;
  for (const GridField& f : traj.fields) m = std::max(m, sup_norm(f));
  return m;
}

double trajectory_lipschitz(const Trajectory& traj) {
  double m = 0.0;
  for (const GridField& f : traj.fields) m = std::max(m, lipschitz_constant(f));
  return m;
}

}  // namespace

double comparison_violation(const PeriodicGrid& grid, const HamiltonianSpec& spec, const SolverConfig& config,
                            std::size_t pairs, double lipschitz, std::uint64_t seed) {
  std::vector<double> worst(pairs, 0.0);
  parallel_for(pairs, [&](std::size_t p) {
    const auto [u0, v0] = random_ordered_pair(grid, lipschitz, seed * 1000003ULL + p);
    // Both runs share one dissipation so they apply the same monotone update.
    SolverConfig c = config;
    if (c.flux.alpha <= 0.0) {
      c.flux.alpha = std::max(resolved_alpha(config, spec, lipschitz_constant(u0)),
                              resolved_alpha(config, spec, lipschitz_constant(v0)));
    }
    const Trajectory u = solve(u0, spec, c);
    const Trajectory v = solve(v0, spec, c);
    double m = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t i = 0; i < grid.size(); ++i) m = std::max(m, u.fields[k][i] - v.fields[k][i]);
    }
    worst[p] = m;
  });
  return pairs == 0 ? 0.0 : max_over(worst);
}

ShiftStudy shift_study(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& base,
                       const std::vector<double>& epsilons, const std::vector<double>& ells) {
  ShiftStudy out;
  out.epsilons = epsilons;
  out.ells = ells;
  out.gaps.assign(epsilons.size(), std::vector<double>(ells.size(), 0.0));
  std::vector<Trajectory> reference(epsilons.size());
  parallel_for(epsilons.size(), [&](std::size_t e) {
    SolverConfig c = base;
    c.epsilon = epsilons[e];
    reference[e] = solve(u0, spec, c);
  });
  const std::size_t nl = ells.size();
  parallel_for(epsilons.size() * nl, [&](std::size_t job) {
    const std::size_t e = job / nl, l = job % nl;
    SolverConfig c = base;
    c.epsilon = epsilons[e];
    // The unshifted run's dissipation keeps both runs on one scheme.
    if (c.flux.alpha <= 0.0) c.flux.alpha = resolved_alpha(base, spec, lipschitz_constant(u0));
    const Trajectory shifted = solve(u0, shift(spec, Point{ells[l], 0.0}), c);
    const Trajectory& ref = reference[e];
    double gap = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) gap = std::max(gap, sup_dist(shifted.fields[k], ref.fields[k]));
    out.gaps[e][l] = gap;
  });
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    double c = 0.0;
    for (std::size_t l = 0; l < nl; ++l) {
      if (ells[l] != 0.0) c = std::max(c, out.gaps[e][l] / std::abs(ells[l]));
    }
    out.C_fit.push_back(c);
  }
  out.spread = relative_spread(out.C_fit);
  return out;
}

std::vector<double> lipschitz_ladder(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& base,
                                     const std::vector<double>& epsilons) {
  std::vector<double> out(epsilons.size(), 0.0);
  parallel_for(epsilons.size(), [&](std::size_t e) {
    SolverConfig c = base;
    c.epsilon = epsilons[e];
    c.record_stride = 1;
    c.record_from = 0.0;
    out[e] = trajectory_lipschitz(solve(u0, spec, c));
  });
  return out;
}

double relative_spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return (*hi - *lo) / *lo;
}

double barrier_constant(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& config) {
  const PeriodicGrid& grid = u0.grid();
  const double h = grid.spacing();
  const double alpha = resolved_alpha(config, spec, lipschitz_constant(u0));
  const NumericalFlux flux{alpha};
  constexpr int kSamples = 256;
  const double T = config.final_time;
  double sup_h = 0.0, max_p = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = T * k / kSamples;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Point pm{0.0, 0.0}, pp{0.0, 0.0};
      for (int a = 0; a < grid.dim(); ++a) {
        const std::ptrdiff_t d0 = a == 0 ? 1 : 0;
        const std::ptrdiff_t d1 = a == 1 ? 1 : 0;
        pm[static_cast<std::size_t>(a)] = (u0[i] - u0[grid.shifted(i, -d0, -d1)]) / h;
        pp[static_cast<std::size_t>(a)] = (u0[grid.shifted(i, d0, d1)] - u0[i]) / h;
      }
      max_p = std::max({max_p, std::hypot(pm[0], pm[1]), std::hypot(pp[0], pp[1])});
      sup_h = std::max(sup_h, std::abs(lax_friedrichs(spec, flux, t, grid.node(i), u0[i], pm, pp)));
    }
  }
  // Between samples H moves by at most C (1 + |p|) |dt|.
  sup_h += spec.lipschitz_tx * (1.0 + max_p) * 0.5 * T / kSamples;
  double diffusion = 0.0;
  if (config.epsilon != 0.0) {
    diffusion = config.epsilon * sup_norm(FractionalOperator(grid, config.order, config.backend).apply(u0));
  }
  return sup_h + diffusion;
}

double barrier_slack(const Trajectory& traj, double C) {
  traj.validate();
  const GridField& u0 = traj.fields.front();
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double ct = C * traj.times[k];
    for (std::size_t i = 0; i < u0.size(); ++i) {
      const double u = traj.fields[k][i];
      slack = std::min({slack, u - (u0[i] - ct), (u0[i] + ct) - u});
    }
  }
  return slack;
}

std::vector<SupConvolutionRow> sup_convolution_ladder(const Trajectory& traj, const HamiltonianSpec& spec,
                                                      const SolverConfig& config, double alpha,
                                                      const std::vector<double>& deltas) {
  const std::vector<GridField> base = scheme_residual(traj, spec, config, alpha);
  double lip_t = 0.0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    lip_t = std::max(lip_t, sup_dist(traj.fields[k + 1], traj.fields[k]) / (traj.times[k + 1] - traj.times[k]));
  }
  const double lip = trajectory_lipschitz(traj) + lip_t;
  std::vector<SupConvolutionRow> rows;
  for (double delta : deltas) {
    SupConvolutionRow row;
    row.delta = delta;
    row.gamma = convolution_radius(traj, delta);
    row.reach = std::min(row.gamma, delta * lip);
    const Trajectory up = sup_convolution(traj, delta);
    Trajectory neg;
    neg.times = traj.times;
    for (const GridField& f : traj.fields) neg.fields.push_back(-f);
    const Trajectory down = inf_convolution(traj, delta);
    const Trajectory neg_up = sup_convolution(neg, delta);
    row.lower_gap = std::numeric_limits<double>::infinity();
    std::size_t active = 0, total = 0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      for (std::size_t i = 0; i < traj.fields[k].size(); ++i) {
        row.lower_gap = std::min(row.lower_gap, up.fields[k][i] - traj.fields[k][i]);
        active += up.fields[k][i] > traj.fields[k][i] ? 1 : 0;
        ++total;
        row.duality_error = std::max(row.duality_error, std::abs(down.fields[k][i] + neg_up.fields[k][i]));
      }
    }
    row.active_fraction = static_cast<double>(active) / static_cast<double>(total);
    const std::vector<GridField> res = scheme_residual(up, spec, config, alpha);
    bool any = false;
    double ex = 0.0, ux = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
      if (traj.times[k] - row.reach < traj.times.front() - kTimeTol) continue;
      if (traj.times[k + 1] + row.reach > traj.times.back() + kTimeTol) continue;
      any = true;
      for (double v : res[k].values()) ex = std::max(ex, v);
      for (double v : base[k].values()) ux = std::max(ux, v);
    }
    row.excess = any ? ex : std::numeric_limits<double>::quiet_NaN();
    row.u_excess = any ? ux : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

InequalityExcess quotient_excess(const Trajectory& traj, const HamiltonianSpec& spec, const SolverConfig& config,
                                 double hq) {
  const double A = spec.lipschitz_p(trajectory_lipschitz(traj));
  const double B = spec.lipschitz_tx * (1.0 + trajectory_sup(traj));
  const Trajectory w = difference_quotient(traj, hq, Point{1.0, 0.0});
  return advection_inequality_residuals(w, A, B, spec.lambda, config.epsilon, config.order, config.backend);
}

SuiteVerdict run_property_suite(const StudyConfig& cfg) {
  cfg.validate();
  const PeriodicGrid grid = cfg.grid();
  const HamiltonianSpec spec = cfg.hamiltonian_spec();
  const GridField u0 = initial_datum(grid, cfg.initial);
  SolverConfig sc = cfg.solver_config();
  sc.backend.kind = BackendKind::quadrature;
  const double T = sc.final_time;
  const double L = grid.length();
  SuiteVerdict v;

  const double lip0 = lipschitz_constant(u0);
  v.add(check_le("a_comparison_violation",
                 comparison_violation(grid, spec, sc, cfg.pairs, std::max(lip0, 1.0), cfg.seed), 1e-12));

  const ShiftStudy shifts = shift_study(u0, spec, sc, cfg.epsilons, cfg.ells);
  v.add(check_le("b_shift_C_fit_spread", shifts.spread, 0.2));

  const std::vector<double> lips = lipschitz_ladder(u0, spec, sc, cfg.epsilons);
  if (spec.lipschitz_tx == 0.0) {
    v.add(check_le("c_lipschitz_max", max_over(lips), 1.05 * lip0));
  } else {
    v.add(check_le("c_lipschitz_spread", relative_spread(lips), 0.1));
  }

  const double C = barrier_constant(u0, spec, sc);
  const Trajectory plain = solve(u0, spec, sc);
  v.add(check_ge("d_barrier_slack", barrier_slack(plain, C), -1e-10));

  SolverConfig coarse = sc;
  coarse.snapshot_times.clear();
  for (int k = 1; k <= 40; ++k) coarse.snapshot_times.push_back(T * k / 40.0);
  const Trajectory sampled = time_window(solve(u0, spec, coarse), T / 8.0, T);
  const double alpha = resolved_alpha(sc, spec, lip0);
  const auto rows = sup_convolution_ladder(sampled, spec, sc, alpha, {1e-2, 1e-3, 1e-4, 1e-5});
  double best = std::numeric_limits<double>::infinity();
  double lower = std::numeric_limits<double>::infinity(), duality = 0.0;
  for (const auto& r : rows) {
    if (std::isfinite(r.excess) && r.active_fraction > 0.0) best = std::min(best, r.excess - r.u_excess);
    lower = std::min(lower, r.lower_gap);
    duality = std::max(duality, r.duality_error);
  }
  v.add(check_ge("e_sup_convolution_lower", lower, 0.0));
  v.add(check_le("e_sup_convolution_duality", duality, 0.0));
  v.add(check_le("e_sup_convolution_excess_over_scheme", best, 0.1));

  SolverConfig dense = sc;
  dense.snapshot_times = {0.5 * T};
  dense.record_stride = 1;
  dense.record_from = 0.5 * T;
  const Trajectory fine = solve(u0, spec, dense);
  const Trajectory late = time_window(fine, 0.5 * T, T);
  const double hq = std::max(grid.spacing(), std::round(L / 256.0 / grid.spacing()) * grid.spacing());
  const InequalityExcess ex = quotient_excess(late, spec, sc, hq);
  v.add(check_le("f_quotient_sub_excess", ex.sub_excess, 0.1));
  v.add(check_le("f_quotient_super_deficit", ex.super_deficit, 0.1));

  const double r = std::min(0.2, 0.5 * T);
  double worst_decay = 0.0, min_alpha = std::numeric_limits<double>::infinity();
  for (double x0 : {0.25 * L, 0.5 * L, 0.75 * L}) {
    const OscillationReport o = oscillation_sequence(fine, {T, {x0, x0}, r}, 0.5, 4);
    for (double d : o.decay_factors) worst_decay = std::max(worst_decay, d);
    min_alpha = std::min(min_alpha, std::isfinite(o.fitted_alpha) ? o.fitted_alpha : -1.0);
  }
  v.add(check_le("g_oscillation_decay", worst_decay, 0.97));
  v.add(check_gt("g_oscillation_alpha", min_alpha, 0.0));
  return v;
}

}  // namespace frachjb

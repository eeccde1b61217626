#pragma once

#include <vector>

#include "frachjb/fracops.hpp"
#include "frachjb/grid.hpp"
#include "frachjb/hamiltonian.hpp"

namespace frachjb {

struct SolverConfig {
  double epsilon = 0.0;
  FractionalOrder order{1.0};
  OperatorBackend backend = OperatorBackend::quadrature();
  double cfl_safety = 0.9;
  double final_time = 1.0;
  /// Times in (0, T] at which the solution is recorded exactly; 0 and T are
  /// always recorded.
  std::vector<double> snapshot_times;
  /// alpha <= 0 selects A_R at R = Lip(u0) + 1.
  NumericalFlux flux;
  /// When nonzero, additionally record every `record_stride`-th internal step
  /// whose time is >= record_from.
  std::size_t record_stride = 0;
  double record_from = 0.0;

  void validate() const;
};

/// Largest admissible explicit step: cfl / (alpha dim / h + eps rho), with rho
/// the operator's spectral-radius bound ((pi/h)^s in 1D). With lambda > 0 the
/// exponential-Euler factor tightens this to log1p(lambda cfl / S) / lambda,
/// which keeps the update monotone. Returns +inf when nothing constrains dt.
double stable_dt(const SolverConfig& config, const PeriodicGrid& grid, const HamiltonianSpec& spec,
                 double current_lipschitz);

/// Dissipation actually used for a datum: flux.alpha if set, else A_R at
/// R = lipschitz + 1.
double resolved_alpha(const SolverConfig& config, const HamiltonianSpec& spec, double lipschitz);

/// One explicit step u -> e^{-lambda dt} u - dt phi(lambda dt) [H^(t, x, 0, D-u, D+u) + eps A u]
/// with phi(z) = (1 - e^{-z}) / z. Throws ConfigError when dt exceeds stable_dt.
GridField step(const GridField& state, double t, double dt, const HamiltonianSpec& spec, const SolverConfig& config);

/// Integrates from u0 to T, recording snapshots exactly (the step before a
/// snapshot is shortened). Throws NumericalError on blow-up.
Trajectory solve(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& config);

/// Per consecutive snapshot pair: sup |(u1 - u0)/dt + H(tm, x, um, grad um) + eps A um|
/// with um the midpoint average and central spatial differences.
std::vector<double> residual(const Trajectory& traj, const HamiltonianSpec& spec, const SolverConfig& config);

/// Scheme-consistent residual fields, one per consecutive snapshot pair:
/// (u1 - u0)/dt + lambda u0 + H^(t0, x, 0, D-u0, D+u0) + eps A u0, using the
/// monotone flux at the earlier snapshot. Zero (to rounding) when the snapshots
/// are consecutive steps of `solve` with lambda = 0.
std::vector<GridField> scheme_residual(const Trajectory& traj, const HamiltonianSpec& spec, const SolverConfig& config,
                                       double alpha);

}  // namespace frachjb

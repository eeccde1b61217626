#pragma once

#include <cstdint>
#include <vector>

#include "frachjb/analysis.hpp"
#include "frachjb/config.hpp"
#include "frachjb/hamiltonian.hpp"
#include "frachjb/solver.hpp"
#include "frachjb/study.hpp"

namespace frachjb {

/// Largest (u - v)+ over all snapshots and nodes, for `pairs` random ordered
/// Lipschitz pairs u0 <= v0 solved with the same spec and config.
double comparison_violation(const PeriodicGrid& grid, const HamiltonianSpec& spec, const SolverConfig& config,
                            std::size_t pairs, double lipschitz, std::uint64_t seed);

struct ShiftStudy {
  std::vector<double> epsilons;
  std::vector<double> ells;
  /// gaps[e][l] = sup over snapshots of |u_ell - u|.
  std::vector<std::vector<double>> gaps;
  /// Per epsilon: max over ell of gap / ell.
  std::vector<double> C_fit;
  /// (max C_fit - min C_fit) / min C_fit.
  double spread = 0.0;
};

/// Solves with spec and shift(spec, ell) from the same datum.
ShiftStudy shift_study(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& base,
                       const std::vector<double>& epsilons, const std::vector<double>& ells);

/// Per epsilon: max over every internal step of lipschitz_constant(u^eps(t)).
std::vector<double> lipschitz_ladder(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& base,
                                     const std::vector<double>& epsilons);

/// (max - min) / min of a positive sequence.
double relative_spread(const std::vector<double>& values);

/// C = sup_t sup_x |H^(t, x, u0, D-u0, D+u0)| + eps sup |A u0|, the scheme's
/// reading of sup |H(t, x, u0, grad u0)| + eps sup |(-Delta)^{s/2} u0|. The
/// time sup is sampled and padded by the (t, x)-Lipschitz constant.
double barrier_constant(const GridField& u0, const HamiltonianSpec& spec, const SolverConfig& config);

/// min over snapshots and nodes of min(u - (u0 - C t), (u0 + C t) - u).
double barrier_slack(const Trajectory& traj, double C);

struct SupConvolutionRow {
  double delta = 0.0;
  double gamma = 0.0;
  /// Bound on the distance from a point to its maximizer,
  /// min(gamma, delta (Lip_x + Lip_t)), since |z - z'|^2 / delta <= u(z') - u(z).
  double reach = 0.0;
  /// Fraction of space-time nodes where u^delta > u.
  double active_fraction = 0.0;
  /// Max positive scheme residual of u^delta over snapshot pairs whose
  /// reach-neighbourhood in time lies inside the trajectory; NaN when none.
  double excess = 0.0;
  /// The same measurement on u itself over the same pairs.
  double u_excess = 0.0;
  /// min (u^delta - u) over the trajectory.
  double lower_gap = 0.0;
  /// sup |inf_convolution(u) + sup_convolution(-u)|.
  double duality_error = 0.0;
};

std::vector<SupConvolutionRow> sup_convolution_ladder(const Trajectory& traj, const HamiltonianSpec& spec,
                                                      const SolverConfig& config, double alpha,
                                                      const std::vector<double>& deltas);

/// Excesses of the difference quotient with step hq along axis 0, using
/// A = A_R at R = max Lip(u(t)) and B = C (1 + sup |u|).
InequalityExcess quotient_excess(const Trajectory& traj, const HamiltonianSpec& spec, const SolverConfig& config,
                                 double hq);

/// Runs the suite (a)-(g) with the configuration's grid, Hamiltonian,
/// initial datum, epsilon ladder, shift ladder and seed.
SuiteVerdict run_property_suite(const StudyConfig& cfg);

}  // namespace frachjb

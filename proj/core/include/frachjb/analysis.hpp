#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frachjb/fracops.hpp"
#include "frachjb/grid.hpp"

namespace frachjb {

/// Parabolic cylinder [t0 - r, t0] x B_r(x0).
struct CylinderSpec {
  double t0 = 0.0;
  Point x0{0.0, 0.0};
  double r = 0.0;
};

struct HolderReport {
  double alpha = 0.0;
  double seminorm = 0.0;
  double window = 0.0;
};

struct OscillationReport {
  std::vector<double> radii;
  std::vector<double> oscillations;
  /// osc_{k+1} / osc_k; 0 when osc_k = 0.
  std::vector<double> decay_factors;
  /// Slope of log osc against log r over k >= 1; NaN when not applicable.
  double fitted_alpha = 0.0;
  double fit_residual = 0.0;
};

/// Snapshots with t_a <= t <= t_b, as a trajectory of their own.
Trajectory time_window(const Trajectory& traj, double t_a, double t_b);

/// sup |w(t,x) - w(s,y)| / (|t-s|^alpha + |x-y|^alpha) over snapshots in
/// [t_a, t_b] and nodes with periodic |x - y| <= window (0 selects L/4).
HolderReport holder_seminorm(const Trajectory& traj, double alpha, double t_a, double t_b, double window = 0.0);

/// |u|_0 + |u_t|_0 + |grad u|_0 + [u_t]_alpha + [grad u]_alpha on the
/// snapshots in (t/2, t]. u_t is the forward difference between consecutive
/// snapshots; grad u the central difference.
double c1alpha_norm(const Trajectory& traj, double t, double alpha, double window = 0.0);

/// (u(t, x + h ell) - u(t, x)) / |h|; h ell must be a whole number of cells.
Trajectory difference_quotient(const Trajectory& traj, double h, const Point& ell);

struct InequalityExcess {
  double sub_excess = 0.0;
  double super_deficit = 0.0;
};

/// Positive parts of
///   w_t - A |grad w| - B + lambda w + eps A_s w <= 0   (sub)
///   w_t + A |grad w| + B + lambda w + eps A_s w >= 0   (super)
/// for a normalized difference quotient w, sup over consecutive snapshot
/// pairs. w_t is the forward difference, the other terms use the pair's
/// average, |grad w| = max(|D-w|, |D+w|) per node.
InequalityExcess advection_inequality_residuals(const Trajectory& w, double A, double B, double lambda, double eps,
                                                FractionalOrder order, const OperatorBackend& backend);

/// u^delta(t, x) = max over snapshots s and nodes y of
/// u(s, y) - (|x - y|^2 + (t - s)^2) / delta, searched within
/// gamma = sqrt(delta M), M = 2 sup|u|.
Trajectory sup_convolution(const Trajectory& traj, double delta);
Trajectory inf_convolution(const Trajectory& traj, double delta);

/// Search radius used by sup_convolution for this trajectory.
double convolution_radius(const Trajectory& traj, double delta);

/// Oscillation over Q_{r ratio^k}(t0, x0), k = 0..kmax.
OscillationReport oscillation_sequence(const Trajectory& traj, const CylinderSpec& cyl, double ratio, int kmax);

struct RateModel {
  enum class Kind { eps_log, eps_pow };
  Kind kind = Kind::eps_log;
  double q = 1.0;

  static RateModel eps_log() { return {Kind::eps_log, 1.0}; }
  static RateModel eps_pow(double q) { return {Kind::eps_pow, q}; }
  double operator()(double eps) const;
  std::string name() const;
};

struct RateFit {
  double C_fit = 0.0;
  /// max over points of error/model, divided by the value at the largest eps.
  double max_ratio = 0.0;
  double slope = 0.0;
  /// error/model per point, in input order.
  std::vector<double> ratios;
  /// Ratio at the smallest eps below half the ratio at the largest.
  bool over_covers = false;
};

/// Points are (epsilon, error). eps_log requires every eps in (0, 1/e).
RateFit fit_rate(const std::vector<std::pair<double, double>>& points, const RateModel& model);

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y, double* residual = nullptr);

}  // namespace frachjb

#pragma once

#include <vector>

#include "frachjb/fracops.hpp"
#include "frachjb/grid.hpp"
#include "frachjb/hamiltonian.hpp"

namespace frachjb {

/// A reference field and a bound on the reference's own error.
struct OracleResult {
  GridField field;
  double guaranteed_accuracy = 0.0;
};

/// Periodic solution of u_t + eps (-Delta)^{s/2} u = 0 through the multiplier
/// exp(-eps |xi|^s t). Exact to rounding for band-limited data; for other
/// data it is the exact semigroup of the trigonometric interpolant.
OracleResult fractional_heat_exact(const GridField& u0, FractionalOrder s, double eps, double t);

struct PoissonCheck {
  double max_deviation = 0.0;
  /// Estimated error of the direct convolution itself (image tail and
  /// trapezoid aliasing).
  double truncation_bound = 0.0;
};

/// One-dimensional, s = 1: convolves u0 with the periodized Poisson kernel
/// tau / (pi (tau^2 + x^2)), tau = eps t, by direct quadrature at `nodes` and
/// compares with fractional_heat_exact there. Empty `nodes` checks all nodes.
PoissonCheck poisson_kernel_check(const GridField& u0, double eps, double t, const std::vector<std::size_t>& nodes = {});

/// min over lattice offsets y of u0(x - y) + t L(y / t), L the Legendre
/// conjugate; offsets are limited to |y| <= t max_speed(Lip(u0)) + 2h.
/// Requires a convex, p-only spec with a finite conjugate.
OracleResult hopf_lax(const GridField& u0, const HamiltonianSpec& spec, double t);

/// u0(x - a t): circular index shift when a t is a whole number of cells on
/// every axis, spectral phase shift otherwise.
OracleResult transport_exact(const GridField& u0, const Point& a, double t);

}  // namespace frachjb

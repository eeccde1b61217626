#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "frachjb/grid.hpp"

namespace frachjb {

using HamiltonianFn = std::function<double(double t, const Point& x, double u, const Point& p)>;

/// H(t, x, u, p) together with the structural constants it is claimed to
/// satisfy: exact linearity in u with coefficient `lambda`, Lipschitz
/// dependence on (t, x) with factor lipschitz_tx * (1 + |p|), and local
/// Lipschitz bound lipschitz_p(R) in p on the ball of radius R.
struct HamiltonianSpec {
  std::string name;
  HamiltonianFn eval;
  double lambda = 0.0;
  double lipschitz_tx = 0.0;
  std::function<double(double)> lipschitz_p;
  bool convex_in_p = false;
  /// True when H depends on p alone (no t, x or u dependence).
  bool p_only = false;
  /// Bound K with ||u0||_{W^{1,inf}} < K; infinite until a datum is attached.
  double data_bound = std::numeric_limits<double>::infinity();
  /// Legendre conjugate L(q) = sup_p (q.p - H(p)); +inf outside its domain.
  /// Empty when the conjugate is not a usable finite function.
  std::function<double(const Point&)> conjugate;
  /// max |D_p H| over |p| <= R; the propagation speed used by search cones.
  std::function<double(double)> max_speed;
};

/// Parameters of the catalog. Unused entries are ignored by a given kind.
struct CatalogParams {
  Point a{1.0, 0.0};           // transport velocity
  double lambda = 0.0;         // affine: coefficient of u
  std::string b = "sin_x_plus_t";  // affine: drift selector
  std::string f = "zero";          // affine: source selector
  int dim = 1;
};

/// kind in {transport, eikonal, quadratic, affine, zero}; `zero` is H = 0.
HamiltonianSpec make_catalog_hamiltonian(const std::string& kind, const CatalogParams& params = {});

/// Names accepted for the affine drift and source coefficients.
const std::map<std::string, std::string>& coefficient_catalog();

/// H_l(t, x, u, p) = H(t, x + l, u, p); constants unchanged.
HamiltonianSpec shift(const HamiltonianSpec& spec, const Point& ell);

/// Dissipation coefficient of the Lax-Friedrichs flux.
struct NumericalFlux {
  double alpha = 0.0;
};

/// Monotone flux H(t,x,u,(p-+p+)/2) - alpha/2 * sum_axes (p+ - p-).
double lax_friedrichs(const HamiltonianSpec& spec, const NumericalFlux& flux, double t, const Point& x, double u,
                      const Point& p_minus, const Point& p_plus);

struct AssumptionReport {
  double linearity_residual = 0.0;   // A2: max |H(v) - H(u) - lambda (v - u)|
  double tx_lipschitz_excess = 0.0;  // A3: max excess over C (1+|p|)(|x-y|+|t-s|)
  double p_lipschitz_excess = 0.0;   // A4: max excess over A_R |p - q|
  double tx_ratio = 0.0;             // observed |dH| / ((1+|p|)(|x-y|+|t-s|))
  double p_ratio = 0.0;              // observed |dH| / (A_R |p-q|)
  std::size_t samples = 0;
  bool pass = false;
};

/// Samples random arguments and reports the largest violation of each
/// structural assumption. Failures are report content, not exceptions.
AssumptionReport verify_assumptions(const HamiltonianSpec& spec, std::size_t sample_budget, std::uint64_t seed,
                                    int dim = 1);

}  // namespace frachjb

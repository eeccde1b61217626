#pragma once

#include <memory>
#include <string>
#include <vector>

#include "frachjb/grid.hpp"

namespace frachjb {

/// Exponent s of eps (-Delta)^{s/2}; restricted to the range 1 <= s <= 2.
class FractionalOrder {
 public:
  explicit FractionalOrder(double s);
  double value() const { return s_; }

 private:
  double s_;
};

enum class BackendKind { spectral, quadrature };

std::string to_string(BackendKind kind);
BackendKind backend_kind_from_string(const std::string& name);

/// Selects how (-Delta)^{s/2} is discretized. `kappa` is the near/far cut of
/// the singular integral, in absolute length units; 0 selects 8 * spacing.
struct OperatorBackend {
  BackendKind kind = BackendKind::quadrature;
  double kappa = 0.0;

  static OperatorBackend spectral() { return {BackendKind::spectral, 0.0}; }
  static OperatorBackend quadrature(double kappa = 0.0) { return {BackendKind::quadrature, kappa}; }

  /// kappa resolved against a grid (applies the 8 * spacing default).
  double resolved_kappa(const PeriodicGrid& grid) const;
};

/// Constant C(n, s) making the singular integral agree with the |xi|^s
/// multiplier: 2^s Gamma((n+s)/2) / (pi^{n/2} |Gamma(-s/2)|). Zero at s = 2.
double normalization_constant(int dim, double s);

/// C(n, s) / (2 - s), finite on the whole range including s = 2, where the
/// compensated near cell reduces to the five/three-point -Laplacian.
double reduced_normalization(int dim, double s);

/// Lattice weights of the principal-value quadrature for one grid, order and
/// cut. The operator is (A u)_i = sum_offsets w (u_i - u_{i+offset}); near
/// offsets lie inside |y| <= kappa and are paired y <-> -y, far weights are
/// folded over all periodic images.
class QuadratureStencil {
 public:
  struct Offset {
    std::ptrdiff_t d0;
    std::ptrdiff_t d1;
    double weight;
  };

  static std::shared_ptr<const QuadratureStencil> build(const PeriodicGrid& grid, FractionalOrder order,
                                                        double kappa);

  const PeriodicGrid& grid() const { return grid_; }
  double order() const { return s_; }
  double kappa() const { return kappa_; }
  /// One representative per symmetric pair {y, -y}; each weight applies to both.
  const std::vector<Offset>& near_pairs() const { return near_; }
  /// Far weights indexed by flat residue offset; entry 0 is unused (zero).
  const std::vector<double>& far_weights() const { return far_; }
  /// Sum of all weights, i.e. the diagonal entry of the operator matrix.
  double diagonal() const { return diagonal_; }

  void apply_near(std::span<const double> u, std::span<double> out) const;
  void apply_far(std::span<const double> u, std::span<double> out) const;

 private:
  QuadratureStencil(const PeriodicGrid& grid, double s, double kappa);
  void build_1d();
  void build_2d();

  PeriodicGrid grid_;
  double s_;
  double kappa_;
  std::vector<Offset> near_;
  std::vector<double> far_;
  double diagonal_ = 0.0;
};

/// A discretization of (-Delta)^{s/2} bound to one grid. Cheap to copy.
class FractionalOperator {
 public:
  FractionalOperator(const PeriodicGrid& grid, FractionalOrder order, const OperatorBackend& backend);

  GridField apply(const GridField& u) const;
  /// Upper bound on the largest eigenvalue, used for the explicit time step.
  double spectral_radius_bound() const;
  const OperatorBackend& backend() const { return backend_; }
  FractionalOrder order() const { return order_; }
  /// Null for the spectral backend.
  const QuadratureStencil* stencil() const { return stencil_.get(); }

 private:
  PeriodicGrid grid_;
  FractionalOrder order_;
  OperatorBackend backend_;
  std::shared_ptr<const QuadratureStencil> stencil_;
};

/// Fourier multiplier |xi|^s on the periodic frequency lattice.
GridField apply_spectral(const GridField& u, FractionalOrder s);

/// Principal-value quadrature with symmetric near-field pairing.
/// Throws ConfigError when kappa < 2 * spacing.
GridField apply_quadrature(const GridField& u, FractionalOrder s, const OperatorBackend& backend);

GridField apply_operator(const GridField& u, FractionalOrder s, const OperatorBackend& backend);

struct SplitParts {
  GridField near;
  GridField far;
};

/// eps * near-part applied to the test function and eps * far-part applied to
/// the (merely bounded) solution.
SplitParts split_parts(const GridField& test_fn, const GridField& u, FractionalOrder s,
                       const OperatorBackend& backend, double eps);

/// Multiplier -i sgn(k); the Nyquist coefficient is dropped.
GridField hilbert_transform(const GridField& u);
/// Multiplier i k (2 pi / L) along `axis`; the Nyquist coefficient is dropped.
GridField spectral_derivative(const GridField& u, int axis = 0);

/// sup | (-Delta)^{1/2} u - H(d/dx u) |, one-dimensional only.
double riesz_identity_residual(const GridField& u);

}  // namespace frachjb

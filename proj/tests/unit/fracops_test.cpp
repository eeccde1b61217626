#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "frachjb/errors.hpp"
#include "frachjb/fracops.hpp"
#include "frachjb/initial_data.hpp"

using namespace frachjb;

namespace {
const double kTwoPi = 2.0 * std::numbers::pi;

GridField fn(const PeriodicGrid& g, double (*f)(double)) {
  return sample(g, [f](const Point& x) { return f(x[0]); });
}

GridField band_limited(const PeriodicGrid& g, std::uint64_t seed, int kmax) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<double> a(kmax + 1), b(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    a[k] = n01(rng);
    b[k] = n01(rng);
  }
  return sample(g, [&](const Point& x) {
    double v = 0.0;
    for (int k = 0; k <= kmax; ++k) v += a[k] * std::cos(k * x[0]) + b[k] * std::sin(k * x[0]);
    return v;
  });
}

// O(N^2) DFT, multiply by |k|^s, inverse DFT.
GridField naive_multiplier(const GridField& u, double s) {
  const std::size_t n = u.size();
  std::vector<std::complex<double>> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) c[k] += u[j] * std::polar(1.0, -kTwoPi * double((k * j) % n) / double(n));
  }
  GridField out(u.grid());
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> v = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      long kk = k <= n / 2 ? long(k) : long(k) - long(n);
      v += std::pow(std::abs(double(kk)), s) * c[k] * std::polar(1.0, kTwoPi * double((k * j) % n) / double(n));
    }
    out[j] = v.real() / double(n);
  }
  return out;
}
}  // namespace

TEST(FractionalOrder, Range) {
  EXPECT_THROW(FractionalOrder(0.5), ConfigError);
  EXPECT_THROW(FractionalOrder(2.01), ConfigError);
  EXPECT_NO_THROW(FractionalOrder(1.0));
  EXPECT_NO_THROW(FractionalOrder(2.0));
}

TEST(Normalization, KnownValues) {
  EXPECT_NEAR(normalization_constant(1, 1.0), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_EQ(normalization_constant(1, 2.0), 0.0);
  // 2D, s = 1: Gamma(3/2) 2 / (pi * 2 sqrt(pi)) = 1 / (2 pi)
  EXPECT_NEAR(normalization_constant(2, 1.0), 1.0 / kTwoPi, 1e-15);
  EXPECT_TRUE(std::isfinite(reduced_normalization(1, 2.0)));
  EXPECT_GT(reduced_normalization(1, 2.0), 0.0);
}

TEST(Spectral, ConstantsInKernel) {
  PeriodicGrid g(1, 64, kTwoPi);
  EXPECT_LT(sup_norm(apply_spectral(GridField(g, 3.0), FractionalOrder(1.5))), 1e-14);
}

TEST(Spectral, Eigenfunctions) {
  PeriodicGrid g(1, 128, kTwoPi);
  GridField u = sample(g, [](const Point& x) { return std::sin(3 * x[0]); });
  EXPECT_LT(sup_dist(apply_spectral(u, FractionalOrder(1.0)), 3.0 * u), 1e-12);
  GridField v = sample(g, [](const Point& x) { return std::sin(x[0]) + std::cos(2 * x[0]); });
  GridField want = sample(g, [](const Point& x) { return std::sin(x[0]) + std::pow(2.0, 1.5) * std::cos(2 * x[0]); });
  EXPECT_LT(sup_dist(apply_spectral(v, FractionalOrder(1.5)), want), 1e-12);
}

TEST(Spectral, TwoDimensionalEigenfunction) {
  PeriodicGrid g(2, 32, kTwoPi);
  GridField u = sample(g, [](const Point& x) { return std::sin(x[0]) * std::cos(2 * x[1]); });
  EXPECT_LT(sup_dist(apply_spectral(u, FractionalOrder(1.0)), std::sqrt(5.0) * u), 1e-12);
}

TEST(Spectral, MatchesNaiveDft) {
  PeriodicGrid g(1, 64, kTwoPi);
  GridField u = random_lipschitz_field(g, 2.0, 5);
  for (double s : {1.0, 1.3, 2.0}) {
    EXPECT_LT(sup_dist(apply_spectral(u, FractionalOrder(s)), naive_multiplier(u, s)), 1e-10) << s;
  }
}

TEST(Quadrature, AnnihilatesConstantsExactly) {
  PeriodicGrid g(1, 256, kTwoPi);
  for (double s : {1.0, 1.5, 2.0}) EXPECT_EQ(sup_norm(apply_quadrature(GridField(g, 5.0), FractionalOrder(s), {})), 0.0);
}

TEST(Quadrature, RejectsSmallKappa) {
  PeriodicGrid g(1, 64, kTwoPi);
  EXPECT_THROW(apply_quadrature(GridField(g), FractionalOrder(1.0), OperatorBackend::quadrature(g.spacing())),
               ConfigError);
}

TEST(Quadrature, SineAgainstSpectral) {
  PeriodicGrid g(1, 512, kTwoPi);
  GridField u = fn(g, [](double x) { return std::sin(x); });
  GridField q = apply_quadrature(u, FractionalOrder(1.0), OperatorBackend::quadrature(0.1));
  EXPECT_LT(sup_dist(q, apply_spectral(u, FractionalOrder(1.0))), 1e-2);
}

TEST(Quadrature, ExpSinAgainstSpectral) {
  PeriodicGrid g(1, 512, kTwoPi);
  GridField u = initial_datum(g, "exp_sin");
  GridField ref = apply_spectral(u, FractionalOrder(1.0));
  const double rel = sup_dist(apply_quadrature(u, FractionalOrder(1.0), {}), ref) / sup_norm(ref);
  EXPECT_LT(rel, 1e-2);
}

TEST(Quadrature, ConvergesAtFirstOrderOrBetter) {
  std::vector<double> errs;
  for (std::size_t n : {256, 512, 1024}) {
    PeriodicGrid g(1, n, kTwoPi);
    GridField u = initial_datum(g, "exp_sin");
    errs.push_back(sup_dist(apply_quadrature(u, FractionalOrder(1.0), {}), apply_spectral(u, FractionalOrder(1.0))));
  }
  EXPECT_GE(std::log2(errs[0] / errs[1]), 1.0);
  EXPECT_GE(std::log2(errs[1] / errs[2]), 1.0);
}

TEST(Quadrature, LaplacianLimitAtSTwo) {
  PeriodicGrid g(1, 256, kTwoPi);
  GridField u = fn(g, [](double x) { return std::sin(x); });
  EXPECT_LT(sup_dist(apply_quadrature(u, FractionalOrder(2.0), {}), u), 1e-3);
}

TEST(Quadrature, MatrixSymmetricMonotoneZeroRowSums) {
  PeriodicGrid g(1, 64, kTwoPi);
  const std::size_t n = g.size();
  for (double s : {1.0, 1.5}) {
    std::vector<GridField> cols;
    for (std::size_t j = 0; j < n; ++j) {
      GridField e(g);
      e[j] = 1.0;
      cols.push_back(apply_quadrature(e, FractionalOrder(s), {}));
    }
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += cols[j][i];
        EXPECT_NEAR(cols[j][i], cols[i][j], 1e-12);
        if (i != j) EXPECT_LE(cols[j][i], 0.0);
      }
      EXPECT_NEAR(row, 0.0, 1e-10);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GridField u = random_lipschitz_field(g, 3.0, seed);
      GridField au = apply_quadrature(u, FractionalOrder(s), {});
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += u[i] * au[i];
      EXPECT_GE(dot, 0.0);
    }
  }
}

TEST(Operators, Linearity) {
  PeriodicGrid g(1, 128, kTwoPi);
  GridField u = random_lipschitz_field(g, 2.0, 1), v = random_lipschitz_field(g, 2.0, 2);
  const double a = 0.7, b = -1.9;
  for (const auto& be : {OperatorBackend::spectral(), OperatorBackend::quadrature()}) {
    FractionalOrder s(1.5);
    GridField lhs = apply_operator(a * u + b * v, s, be);
    GridField rhs = a * apply_operator(u, s, be) + b * apply_operator(v, s, be);
    EXPECT_LT(sup_dist(lhs, rhs), 1e-12 * (1.0 + sup_norm(lhs)));
  }
}

TEST(Operators, TranslationEquivariance) {
  PeriodicGrid g(1, 128, kTwoPi);
  GridField u = random_lipschitz_field(g, 2.0, 3);
  FractionalOrder s(1.0);
  EXPECT_EQ(sup_dist(shift_nodes(apply_quadrature(u, s, {}), 1), apply_quadrature(shift_nodes(u, 1), s, {})), 0.0);
  EXPECT_LT(sup_dist(shift_nodes(apply_spectral(u, s), 1), apply_spectral(shift_nodes(u, 1), s)), 1e-12);
}

TEST(Operators, SpectralRadiusBound) {
  PeriodicGrid g(1, 64, kTwoPi);
  for (const auto& be : {OperatorBackend::spectral(), OperatorBackend::quadrature()}) {
    FractionalOperator op(g, FractionalOrder(1.0), be);
    GridField alt(g);
    for (std::size_t i = 0; i < g.size(); ++i) alt[i] = i % 2 ? -1.0 : 1.0;
    EXPECT_LE(sup_norm(op.apply(alt)), op.spectral_radius_bound() * (1 + 1e-12));
  }
}

TEST(SplitParts, ConsistentWithFullOperator) {
  PeriodicGrid g(1, 256, kTwoPi);
  GridField u = initial_datum(g, "exp_sin");
  auto be = OperatorBackend::quadrature(0.2);
  FractionalOrder s(1.0);
  SplitParts p = split_parts(u, u, s, be, 0.3);
  EXPECT_LT(sup_dist(p.near + p.far, 0.3 * apply_quadrature(u, s, be)), 1e-13);
}

TEST(SplitParts, ZeroSolutionHasZeroFarPart) {
  PeriodicGrid g(1, 256, kTwoPi);
  SplitParts p = split_parts(initial_datum(g, "sine"), GridField(g), FractionalOrder(1.0), {}, 1.0);
  EXPECT_EQ(sup_norm(p.far), 0.0);
}

TEST(SplitParts, NearPartShrinksWithKappa) {
  PeriodicGrid g(1, 4096, kTwoPi);
  GridField u = initial_datum(g, "sine");
  std::vector<double> near;
  for (double kappa : {0.4, 0.2, 0.1}) {
    near.push_back(sup_norm(split_parts(u, u, FractionalOrder(1.0), OperatorBackend::quadrature(kappa), 1.0).near));
  }
  // O(kappa^{2-s}) with s = 1
  EXPECT_NEAR(near[0] / near[1], 2.0, 0.2);
  EXPECT_NEAR(near[1] / near[2], 2.0, 0.2);
}

TEST(Riesz, Identity) {
  PeriodicGrid g(1, 256, kTwoPi);
  for (int k : {1, 5, 40}) {
    GridField u = sample(g, [k](const Point& x) { return std::sin(k * x[0]); });
    EXPECT_LT(riesz_identity_residual(u), 1e-12) << k;
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_LT(riesz_identity_residual(band_limited(g, seed, 60)), 1e-10);
  EXPECT_EQ(riesz_identity_residual(GridField(g, 2.0)), 0.0);
  EXPECT_THROW(riesz_identity_residual(GridField(PeriodicGrid(2, 8, 1.0))), ConfigError);
}

TEST(Hilbert, SineToMinusCosine) {
  PeriodicGrid g(1, 64, kTwoPi);
  // H sin = -cos under the multiplier -i sgn(k)
  GridField h = hilbert_transform(initial_datum(g, "sine"));
  GridField want = fn(g, [](double x) { return -std::cos(x); });
  EXPECT_LT(sup_dist(h, want), 1e-14);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "frachjb/analysis.hpp"
#include "frachjb/errors.hpp"
#include "frachjb/initial_data.hpp"
#include "frachjb/oracles.hpp"
#include "frachjb/solver.hpp"

using namespace frachjb;

namespace {
const double kTwoPi = 2.0 * std::numbers::pi;

Trajectory frozen(const GridField& f, const std::vector<double>& times) {
  Trajectory t;
  for (double s : times) {
    t.times.push_back(s);
    t.fields.push_back(f);
  }
  return t;
}

std::vector<double> ladder(double a, double b, double step) {
  std::vector<double> out;
  for (int k = 0; a + k * step <= b + 1e-12; ++k) out.push_back(a + k * step);
  return out;
}

Trajectory heat_trajectory(const GridField& u0, const std::vector<double>& times) {
  Trajectory t;
  for (double s : times) {
    t.times.push_back(s);
    t.fields.push_back(fractional_heat_exact(u0, FractionalOrder(1.0), 1.0, s).field);
  }
  return t;
}

double brute_holder(const GridField& w, double alpha, double window) {
  const PeriodicGrid& g = w.grid();
  double best = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double d = g.periodic_distance(g.node(i)[0], g.node(j)[0]);
      if (i == j || d > window + 1e-12) continue;
      best = std::max(best, std::abs(w[i] - w[j]) / std::pow(d, alpha));
    }
  }
  return best;
}
}  // namespace

TEST(Holder, ConstantIsZero) {
  PeriodicGrid g(1, 64, kTwoPi);
  EXPECT_EQ(holder_seminorm(frozen(GridField(g, 2.0), {0.0, 0.1, 0.2}), 0.5, 0.0, 0.2).seminorm, 0.0);
}

TEST(Holder, KinkSlope) {
  PeriodicGrid g(1, 512, kTwoPi);
  HolderReport r = holder_seminorm(frozen(initial_datum(g, "abs_sin"), {0.0}), 1.0, 0.0, 0.0);
  EXPECT_NEAR(r.seminorm, 1.0, 1e-2);
  EXPECT_DOUBLE_EQ(r.window, g.length() / 4);
}

TEST(Holder, MatchesPairEnumeration) {
  PeriodicGrid g(1, 64, kTwoPi);
  GridField s = initial_datum(g, "sine");
  HolderReport r = holder_seminorm(frozen(s, {0.0}), 0.5, 0.0, 0.0, g.length() / 2);
  EXPECT_NEAR(r.seminorm, brute_holder(s, 0.5, g.length() / 2), 1e-13);
}

TEST(Holder, SpaceTimePairsMatchEnumeration) {
  PeriodicGrid g(1, 32, kTwoPi);
  Trajectory tr = heat_trajectory(initial_datum(g, "triangle"), {0.0, 0.05, 0.1, 0.3});
  const double W = 1.0, alpha = 0.5;
  double best = 0.0;
  for (std::size_t a = 0; a < tr.size(); ++a) {
    for (std::size_t b = 0; b < tr.size(); ++b) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
          const double d = g.periodic_distance(g.node(i)[0], g.node(j)[0]);
          const double dt = std::abs(tr.times[a] - tr.times[b]);
          if (d > W || (d == 0.0 && dt == 0.0)) continue;
          best = std::max(best, std::abs(tr.fields[a][i] - tr.fields[b][j]) / (std::pow(dt, alpha) + std::pow(d, alpha)));
        }
      }
    }
  }
  EXPECT_NEAR(holder_seminorm(tr, alpha, 0.0, 0.3, W).seminorm, best, 1e-13);
}

TEST(Holder, MonotoneInWindowAndDominatesLipschitz) {
  PeriodicGrid g(1, 128, kTwoPi);
  GridField u = random_lipschitz_field(g, 2.0, 6);
  Trajectory tr = frozen(u, {0.0});
  double prev = 0.0;
  for (double w : {0.1, 0.5, 1.0, 2.0}) {
    const double v = holder_seminorm(tr, 0.5, 0.0, 0.0, w).seminorm;
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_GE(holder_seminorm(tr, 1.0, 0.0, 0.0).seminorm, lipschitz_constant(u) - 1e-12);
}

TEST(Holder, Preconditions) {
  PeriodicGrid g(1, 16, 1.0);
  Trajectory tr = frozen(GridField(g), {0.0, 0.1});
  EXPECT_THROW(holder_seminorm(tr, 1.5, 0.0, 0.1), ConfigError);
  EXPECT_THROW(holder_seminorm(tr, 0.5, 0.2, 0.3), ConfigError);
}

TEST(C1Alpha, ConstantSolution) {
  PeriodicGrid g(1, 64, kTwoPi);
  EXPECT_NEAR(c1alpha_norm(frozen(GridField(g, -1.5), ladder(0.0, 0.2, 0.02)), 0.2, 0.5), 1.5, 1e-14);
}

TEST(C1Alpha, NeedsThreeSnapshots) {
  PeriodicGrid g(1, 64, kTwoPi);
  EXPECT_THROW(c1alpha_norm(frozen(GridField(g), {0.0, 0.15, 0.2}), 0.2, 0.5), ConfigError);
}

TEST(C1Alpha, KinkedHeatBlowsUpTowardZero) {
  PeriodicGrid g(1, 256, kTwoPi);
  Trajectory tr = heat_trajectory(initial_datum(g, "triangle"), ladder(0.0, 0.25, 0.0025));
  const double late = c1alpha_norm(tr, 0.25, 0.5);
  const double early = c1alpha_norm(tr, 0.05, 0.5);
  EXPECT_TRUE(std::isfinite(late));
  EXPECT_GT(early / late, 1.0);
}

TEST(C1Alpha, SmoothDataStaysBounded) {
  PeriodicGrid g(1, 256, kTwoPi);
  Trajectory tr = heat_trajectory(initial_datum(g, "sine"), ladder(0.0, 0.25, 0.001));
  const double late = c1alpha_norm(tr, 0.25, 0.5);
  const double early = c1alpha_norm(tr, 0.01, 0.5);
  EXPECT_LT(early / late, 1.5);
}

TEST(DifferenceQuotient, Examples) {
  PeriodicGrid g(1, 128, kTwoPi);
  const double h = g.spacing();
  Trajectory c = difference_quotient(frozen(GridField(g, 3.0), {0.0, 0.1}), h, {1.0, 0.0});
  for (const auto& f : c.fields) EXPECT_EQ(sup_norm(f), 0.0);

  Trajectory s = difference_quotient(frozen(initial_datum(g, "sine"), {0.0}), h, {1.0, 0.0});
  GridField want = sample(g, [h](const Point& x) { return 2.0 * std::cos(x[0] + h / 2) * std::sin(h / 2) / h; });
  EXPECT_LT(sup_dist(s.fields[0], want), 1e-12);

  GridField u = random_lipschitz_field(g, 1.0, 1), v = random_lipschitz_field(g, 1.0, 2);
  GridField lhs = difference_quotient(frozen(u + v, {0.0}), 3 * h, {1.0, 0.0}).fields[0];
  GridField rhs = difference_quotient(frozen(u, {0.0}), 3 * h, {1.0, 0.0}).fields[0] +
                  difference_quotient(frozen(v, {0.0}), 3 * h, {1.0, 0.0}).fields[0];
  EXPECT_LT(sup_dist(lhs, rhs), 1e-13);
  EXPECT_THROW(difference_quotient(frozen(u, {0.0}), 0.5 * h, {1.0, 0.0}), ConfigError);
}

TEST(AdvectionInequality, ZeroField) {
  PeriodicGrid g(1, 64, kTwoPi);
  InequalityExcess e = advection_inequality_residuals(frozen(GridField(g), {0.0, 0.1}), 1.0, 0.5, 0.0, 0.3,
                                                      FractionalOrder(1.0), {});
  EXPECT_EQ(e.sub_excess, 0.0);
  EXPECT_EQ(e.super_deficit, 0.0);
}

TEST(AdvectionInequality, RejectsNegativeConstants) {
  PeriodicGrid g(1, 64, kTwoPi);
  Trajectory w = frozen(GridField(g), {0.0, 0.1});
  EXPECT_THROW(advection_inequality_residuals(w, -1.0, 0.0, 0.0, 0.0, FractionalOrder(1.0), {}), ConfigError);
  EXPECT_THROW(advection_inequality_residuals(w, 1.0, -0.1, 0.0, 0.0, FractionalOrder(1.0), {}), ConfigError);
}

TEST(AdvectionInequality, TransportQuotientConverges) {
  std::vector<double> excess;
  for (std::size_t n : {256, 512}) {
    PeriodicGrid g(1, n, kTwoPi);
    SolverConfig c;
    c.final_time = 0.2;
    c.record_stride = 1;
    Trajectory tr = solve(initial_datum(g, "sine"), make_catalog_hamiltonian("transport"), c);
    Trajectory w = difference_quotient(tr, kTwoPi / 64, {1.0, 0.0});
    InequalityExcess e = advection_inequality_residuals(w, 1.0, 0.0, 0.0, 0.0, FractionalOrder(1.0), {});
    excess.push_back(std::max(e.sub_excess, e.super_deficit));
  }
  EXPECT_LT(excess[1], excess[0]);
  EXPECT_LT(excess[1], 0.05);
}

TEST(AdvectionInequality, WrongSpeedIsDetected) {
  PeriodicGrid g(1, 256, kTwoPi);
  SolverConfig c;
  c.final_time = 0.2;
  c.record_stride = 1;
  Trajectory tr = solve(initial_datum(g, "sine"), make_catalog_hamiltonian("eikonal"), c);
  Trajectory w = difference_quotient(tr, kTwoPi / 64, {1.0, 0.0});
  InequalityExcess right = advection_inequality_residuals(w, 1.0, 0.0, 0.0, 0.0, FractionalOrder(1.0), {});
  InequalityExcess wrong = advection_inequality_residuals(w, 0.0, 0.0, 0.0, 0.0, FractionalOrder(1.0), {});
  EXPECT_GT(std::max(wrong.sub_excess, wrong.super_deficit), 0.3);
  EXPECT_GT(std::max(wrong.sub_excess, wrong.super_deficit), 10 * std::max(right.sub_excess, right.super_deficit));
}

TEST(SupConvolution, ConstantUnchanged) {
  PeriodicGrid g(1, 64, kTwoPi);
  Trajectory u = sup_convolution(frozen(GridField(g, 0.7), {0.0, 0.1, 0.2}), 0.01);
  for (const auto& f : u.fields) EXPECT_EQ(sup_dist(f, GridField(g, 0.7)), 0.0);
}

TEST(SupConvolution, KinkApexValues) {
  PeriodicGrid g(1, 1024, kTwoPi);
  const double delta = 20 * g.spacing();  // maximizer |y| = delta / 2 is a node
  GridField v = initial_datum(g, "triangle");  // |x| near 0
  Trajectory convex = sup_convolution(frozen(v, {0.0, 0.1}), delta);
  EXPECT_NEAR(convex.fields[0][0], delta / 4, 1e-14);
  Trajectory concave = sup_convolution(frozen(-1.0 * v, {0.0, 0.1}), delta);
  EXPECT_EQ(concave.fields[0][0], 0.0);
  double up = -1e300, down = -1e300;
  for (int j = -100000; j <= 100000; ++j) {
    const double y = j * 1e-6;
    up = std::max(up, std::abs(y) - y * y / delta);
    down = std::max(down, -std::abs(y) - y * y / delta);
  }
  EXPECT_NEAR(up, delta / 4, 1e-10);
  EXPECT_EQ(down, 0.0);
}

TEST(SupConvolution, SandwichMonotoneAndDual) {
  PeriodicGrid g(1, 256, kTwoPi);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    GridField u = random_lipschitz_field(g, 1.5, seed);
    Trajectory tr = frozen(u, {0.0, 0.05, 0.1});
    const double lip = lipschitz_constant(u);
    GridField prev(g);
    bool have_prev = false;
    for (double delta : {0.1, 0.03, 0.01}) {
      GridField ud = sup_convolution(tr, delta).fields[1];
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_GE(ud[i], u[i]);
        EXPECT_LE(ud[i], u[i] + lip * lip * delta / 4 + 1e-12);
        if (have_prev) EXPECT_LE(ud[i], prev[i]);
      }
      prev = ud;
      have_prev = true;
      Trajectory inf = inf_convolution(tr, delta);
      Trajectory neg = sup_convolution(frozen(-1.0 * u, {0.0, 0.05, 0.1}), delta);
      for (std::size_t k = 0; k < tr.size(); ++k) EXPECT_EQ(sup_dist(inf.fields[k], -1.0 * neg.fields[k]), 0.0);
    }
  }
}

TEST(SupConvolution, RadiusRule) {
  PeriodicGrid g(1, 64, kTwoPi);
  Trajectory tr = frozen(GridField(g, 2.0), {0.0});
  EXPECT_NEAR(convolution_radius(tr, 0.01), std::sqrt(0.01 * 4.0), 1e-15);
  EXPECT_THROW(sup_convolution(tr, 0.0), ConfigError);
}

TEST(Oscillation, ConstantNotApplicable) {
  PeriodicGrid g(1, 256, kTwoPi);
  OscillationReport r =
      oscillation_sequence(frozen(GridField(g, 1.0), ladder(0.0, 1.0, 0.01)), {1.0, {kTwoPi / 2, 0.0}, 1.0}, 0.5, 3);
  for (double o : r.oscillations) EXPECT_EQ(o, 0.0);
  EXPECT_TRUE(std::isnan(r.fitted_alpha));
}

TEST(Oscillation, HalfPowerCusp) {
  PeriodicGrid g(1, 4096, kTwoPi);
  const double x0 = g.node(2048)[0];
  GridField w = sample(g, [x0](const Point& x) { return std::sqrt(std::abs(x[0] - x0)); });
  OscillationReport r = oscillation_sequence(frozen(w, ladder(0.0, 1.0, 0.01)), {1.0, {x0, 0.0}, 1.0}, 0.5, 5);
  ASSERT_EQ(r.radii.size(), 6u);
  for (std::size_t k = 1; k < r.oscillations.size(); ++k) {
    EXPECT_LE(r.oscillations[k], r.oscillations[k - 1]);
    EXPECT_NEAR(r.decay_factors[k - 1], std::sqrt(0.5), 0.03);
  }
  EXPECT_NEAR(r.fitted_alpha, 0.5, 0.05);
}

TEST(Oscillation, NestingOnRandomData) {
  PeriodicGrid g(1, 512, kTwoPi);
  Trajectory tr = heat_trajectory(random_lipschitz_field(g, 2.0, 3), ladder(0.0, 1.0, 0.02));
  OscillationReport r = oscillation_sequence(tr, {1.0, {2.0, 0.0}, 0.8}, 0.6, 4);
  for (std::size_t k = 1; k < r.oscillations.size(); ++k) EXPECT_LE(r.oscillations[k], r.oscillations[k - 1]);
}

TEST(Oscillation, UnderResolvedCylinder) {
  PeriodicGrid g(1, 64, kTwoPi);
  EXPECT_THROW(oscillation_sequence(frozen(GridField(g), ladder(0.0, 1.0, 0.1)), {1.0, {1.0, 0.0}, 1.0}, 0.5, 6),
               ConfigError);
}

TEST(FitRate, ModelIdentity) {
  std::vector<std::pair<double, double>> pts;
  for (double e : {0.1, 0.05, 0.01, 0.001}) pts.push_back({e, e * std::abs(std::log(e))});
  RateFit f = fit_rate(pts, RateModel::eps_log());
  EXPECT_NEAR(f.C_fit, 1.0, 1e-14);
  EXPECT_NEAR(f.max_ratio, 1.0, 1e-14);
  EXPECT_FALSE(f.over_covers);
}

TEST(FitRate, LinearErrorIsOverCovered) {
  std::vector<std::pair<double, double>> pts;
  for (double e : {0.1, 0.01, 0.001, 0.0001}) pts.push_back({e, e});
  RateFit f = fit_rate(pts, RateModel::eps_log());
  EXPECT_NEAR(f.C_fit, 1.0 / std::abs(std::log(0.1)), 1e-14);
  EXPECT_LT(f.C_fit, 1.0);
  EXPECT_NEAR(f.ratios.back(), 1.0 / std::abs(std::log(0.0001)), 1e-14);
  EXPECT_TRUE(f.over_covers);
}

TEST(FitRate, PowerSlope) {
  std::vector<std::pair<double, double>> pts;
  for (double e : {0.125, 0.0625, 0.01, 0.002}) pts.push_back({e, 3.0 * std::pow(e, 2.0 / 3.0)});
  RateFit f = fit_rate(pts, RateModel::eps_pow(2.0 / 3.0));
  EXPECT_NEAR(f.slope, 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(f.C_fit, 3.0, 1e-12);
}

TEST(FitRate, Rejections) {
  EXPECT_THROW(fit_rate({}, RateModel::eps_log()), ConfigError);
  EXPECT_THROW(fit_rate({{0.5, 0.1}}, RateModel::eps_log()), ConfigError);
  EXPECT_NO_THROW(fit_rate({{0.5, 0.1}, {0.25, 0.05}}, RateModel::eps_pow(1.0)));
  EXPECT_THROW(fit_rate({{0.1, -1.0}}, RateModel::eps_log()), ConfigError);
}

TEST(LeastSquares, ExactLine) {
  double res = 1.0;
  EXPECT_NEAR(least_squares_slope({0, 1, 2, 3}, {1, 3, 5, 7}, &res), 2.0, 1e-15);
  EXPECT_NEAR(res, 0.0, 1e-14);
}

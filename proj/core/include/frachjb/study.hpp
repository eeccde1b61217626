#pragma once

#include <string>
#include <vector>

#include "frachjb/analysis.hpp"
#include "frachjb/config.hpp"

namespace frachjb {

/// One measured quantity against its threshold.
struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Human-readable comparison, e.g. "<= 1e-12".
  std::string relation;
};

Check check_le(const std::string& name, double measured, double threshold);
Check check_ge(const std::string& name, double measured, double threshold);
Check check_gt(const std::string& name, double measured, double threshold);
Check check_within(const std::string& name, double measured, double lo, double hi);

struct SuiteVerdict {
  std::vector<Check> checks;
  bool pass = true;

  void add(Check c);
  std::string to_json() const;
};

/// Raised when a study refuses to produce a number (for example a scheme
/// self-error too large to separate from the quantity being measured).
class StudyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateRow {
  double epsilon = 0.0;
  double error = 0.0;
  double self_error = 0.0;
  double model_eps_log = 0.0;
  double ratio = 0.0;  // error / model_eps_log
};

struct RateReport {
  StudyConfig config;
  std::vector<RateRow> rows;
  RateFit fit_eps_log;
  /// Fit against eps^{1/s}.
  RateFit fit_pow;
  /// error / epsilon per row.
  std::vector<double> error_over_eps;
  SuiteVerdict verdict;

  std::string to_csv() const;
  std::string to_json() const;
};

/// sup |u^eps(T) - u(T)| per epsilon against an oracle for the inviscid
/// problem. method = semigroup composes fractional_heat_exact with
/// transport_exact (transport only); method = solve runs the scheme on n and
/// 2n points. The self-error column is the change of the measured error
/// under one refinement; the study refuses to run when it exceeds
/// self_error_fraction times the smallest model value.
RateReport run_rate_study(const StudyConfig& cfg);

struct RegularityRow {
  double t = 0.0;
  double c1alpha = 0.0;
  /// Holder seminorm of the gradient on (t/2, t] for each alpha in alphas.
  std::vector<double> gradient_holder;
  /// Fitted oscillation exponent at L/4, L/2, 3L/4.
  std::vector<double> oscillation_alpha;
};

struct RegularityReport {
  StudyConfig config;
  std::vector<double> alphas;
  std::vector<RegularityRow> rows;
  /// Least-squares slope of log c1alpha against log t.
  double loglog_slope = 0.0;
  SuiteVerdict verdict;

  std::string to_json() const;
};

/// Solves with cfg (epsilon > 0), recording every step from min(times)/2,
/// and tabulates C^{1,alpha} norms, Holder scans and oscillation fits.
RegularityReport run_regularity_study(const StudyConfig& cfg);

/// fracops invariants at one resolution: eigenfunction identity, backend
/// agreement, Riesz identity, constant annihilation.
SuiteVerdict run_operator_check(std::size_t n, std::uint64_t seed);

}  // namespace frachjb

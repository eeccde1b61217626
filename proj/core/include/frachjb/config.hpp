#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "frachjb/fracops.hpp"
#include "frachjb/grid.hpp"
#include "frachjb/hamiltonian.hpp"
#include "frachjb/solver.hpp"

namespace frachjb {

/// Fully resolved experiment configuration. Every key has a default, so an
/// empty file is a valid configuration.
struct StudyConfig {
  // [grid]
  int dim = 1;
  std::size_t n = 256;
  double length = 0.0;  // 0 selects 2 pi

  // [operator]
  BackendKind backend = BackendKind::quadrature;
  double kappa = 0.0;

  // [hamiltonian]
  std::string hamiltonian = "transport";
  double lambda = 0.0;
  Point a{1.0, 0.0};
  std::string b = "sin_x_plus_t";
  std::string f = "zero";

  // [solver]
  double epsilon = 0.0;
  double s = 1.0;
  double T = 0.5;
  double cfl = 0.9;
  std::vector<double> snapshots;
  double alpha = 0.0;

  // [study]
  std::string initial = "triangle";
  std::vector<double> epsilons{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625, 0.001953125, 0.0009765625};
  std::string method = "semigroup";  // rate study: semigroup | solve
  double self_error_fraction = 0.1;
  double upper_ratio = 1.2;
  double holder_alpha = 0.5;
  std::vector<double> times{0.1, 0.2, 0.4};
  std::size_t pairs = 50;
  std::vector<double> ells{0.01, 0.02, 0.04, 0.08};
  std::uint64_t seed = 1;

  PeriodicGrid grid() const;
  OperatorBackend operator_backend() const;
  HamiltonianSpec hamiltonian_spec() const;
  SolverConfig solver_config() const;

  /// Canonical text form: every key, fixed order, 17-digit numbers. Parsing
  /// it back yields an identical configuration.
  std::string to_ini() const;
  /// FNV-1a of to_ini(), as 16 hex digits.
  std::string hash() const;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Parses the INI-style text: sections grid, operator, hamiltonian, solver,
/// study; `key = value`, lists comma separated with optional brackets.
/// Unknown sections or keys are rejected by name.
StudyConfig parse_config(std::istream& in);
StudyConfig load_config(const std::string& path);

/// Additional checks for rate studies: ladder sorted descending inside (0, 1/e).
void validate_rate_ladder(const std::vector<double>& epsilons);

}  // namespace frachjb

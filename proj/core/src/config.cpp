#include "frachjb/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "frachjb/errors.hpp"
#include "frachjb/initial_data.hpp"

namespace frachjb {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"dim", "n", "L"}},
      {"operator", {"kind", "kappa"}},
      {"hamiltonian", {"kind", "lambda", "a", "b", "f"}},
      {"solver", {"epsilon", "s", "T", "cfl", "snapshots", "alpha"}},
      {"study",
       {"initial", "epsilons", "method", "self_error_fraction", "upper_ratio", "holder_alpha", "times", "pairs", "ells",
        "seed"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  if (trim(text.substr(used)) != "") throw ConfigError(key + ": expected a number, got '" + text + "'");
  if (!std::isfinite(v)) throw ConfigError(key + ": value must be finite");
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key + ": expected a nonnegative integer, got '" + text + "'");
  }
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    throw ConfigError(key + ": integer out of range");
  }
}

std::vector<double> to_list(const std::string& key, std::string text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ConfigError(key + ": unbalanced brackets");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + "]";
}

}  // namespace

PeriodicGrid StudyConfig::grid() const {
  return PeriodicGrid(dim, n, length > 0.0 ? length : 2.0 * std::numbers::pi);
}

OperatorBackend StudyConfig::operator_backend() const { return {backend, kappa}; }

HamiltonianSpec StudyConfig::hamiltonian_spec() const {
  CatalogParams p;
  p.a = a;
  p.lambda = lambda;
  p.b = b;
  p.f = f;
  p.dim = dim;
  return make_catalog_hamiltonian(hamiltonian, p);
}

SolverConfig StudyConfig::solver_config() const {
  SolverConfig c;
  c.epsilon = epsilon;
  c.order = FractionalOrder(s);
  c.backend = operator_backend();
  c.cfl_safety = cfl;
  c.final_time = T;
  c.snapshot_times = snapshots;
  c.flux.alpha = alpha;
  return c;
}

std::string StudyConfig::to_ini() const {
  std::ostringstream o;
  o << "[grid]\n"
    << "dim = " << dim << "\n"
    << "n = " << n << "\n"
    << "L = " << format_double(length > 0.0 ? length : 2.0 * std::numbers::pi) << "\n\n"
    << "[operator]\n"
    << "kind = " << to_string(backend) << "\n"
    << "kappa = " << format_double(kappa) << "\n\n"
    << "[hamiltonian]\n"
    << "kind = " << hamiltonian << "\n"
    << "lambda = " << format_double(lambda) << "\n"
    << "a = " << format_double(a[0]) << ", " << format_double(a[1]) << "\n"
    << "b = " << b << "\n"
    << "f = " << f << "\n\n"
    << "[solver]\n"
    << "epsilon = " << format_double(epsilon) << "\n"
    << "s = " << format_double(s) << "\n"
    << "T = " << format_double(T) << "\n"
    << "cfl = " << format_double(cfl) << "\n"
    << "snapshots = " << join(snapshots) << "\n"
    << "alpha = " << format_double(alpha) << "\n\n"
    << "[study]\n"
    << "initial = " << initial << "\n"
    << "epsilons = " << join(epsilons) << "\n"
    << "method = " << method << "\n"
    << "self_error_fraction = " << format_double(self_error_fraction) << "\n"
    << "upper_ratio = " << format_double(upper_ratio) << "\n"
    << "holder_alpha = " << format_double(holder_alpha) << "\n"
    << "times = " << join(times) << "\n"
    << "pairs = " << pairs << "\n"
    << "ells = " << join(ells) << "\n"
    << "seed = " << seed << "\n";
  return o.str();
}

std::string StudyConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_ini()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void StudyConfig::validate() const {
  if (dim != 1 && dim != 2) throw ConfigError("grid.dim must be 1 or 2");
  grid();
  if (kappa < 0.0) throw ConfigError("operator.kappa must be nonnegative");
  if (backend == BackendKind::quadrature) OperatorBackend{backend, kappa}.resolved_kappa(grid());
  hamiltonian_spec();
  try {
    solver_config().validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
  if (method != "semigroup" && method != "solve") throw ConfigError("study.method must be 'semigroup' or 'solve'");
  const auto& names = initial_datum_names();
  if (std::find(names.begin(), names.end(), initial) == names.end()) {
    throw ConfigError("study.initial: unknown initial datum '" + initial + "'");
  }
  if (!(self_error_fraction > 0.0)) throw ConfigError("study.self_error_fraction must be positive");
  if (!(upper_ratio >= 1.0)) throw ConfigError("study.upper_ratio must be >= 1");
  if (!(holder_alpha > 0.0 && holder_alpha <= 1.0)) throw ConfigError("study.holder_alpha must lie in (0, 1]");
  for (double t : times) {
    if (!(t > 0.0)) throw ConfigError("study.times must be positive");
  }
  for (double e : epsilons) {
    if (!(e > 0.0)) throw ConfigError("study.epsilons must be positive");
  }
}

void validate_rate_ladder(const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw ConfigError("study.epsilons: the ladder is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double e = epsilons[i];
    if (!(e > 0.0 && e < std::exp(-1.0))) {
      throw ConfigError("study.epsilons: every epsilon must lie in (0, 1/e) for the eps|log eps| rate; got " +
                        format_double(e));
    }
    if (i > 0 && !(e < epsilons[i - 1])) throw ConfigError("study.epsilons: the ladder must be sorted descending");
  }
}

StudyConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  StudyConfig c;
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      if (body.empty()) throw ConfigError("config: key '" + section + "' outside any section");
      throw ConfigError("config: unknown section '" + section + "'");
    }
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      if (!known->second.count(key)) throw ConfigError("config: unknown key '" + full + "'");
      const std::string v = trim(node.get_value<std::string>());
      if (full == "grid.dim") c.dim = static_cast<int>(to_unsigned(full, v));
      else if (full == "grid.n") c.n = to_unsigned(full, v);
      else if (full == "grid.L") c.length = to_double(full, v);
      else if (full == "operator.kind") c.backend = backend_kind_from_string(v);
      else if (full == "operator.kappa") c.kappa = to_double(full, v);
      else if (full == "hamiltonian.kind") c.hamiltonian = v;
      else if (full == "hamiltonian.lambda") c.lambda = to_double(full, v);
      else if (full == "hamiltonian.a") {
        const auto list = to_list(full, v);
        if (list.empty() || list.size() > 2) throw ConfigError(full + ": expected one or two components");
        c.a = {list[0], list.size() == 2 ? list[1] : 0.0};
      } else if (full == "hamiltonian.b") c.b = v;
      else if (full == "hamiltonian.f") c.f = v;
      else if (full == "solver.epsilon") c.epsilon = to_double(full, v);
      else if (full == "solver.s") c.s = to_double(full, v);
      else if (full == "solver.T") c.T = to_double(full, v);
      else if (full == "solver.cfl") c.cfl = to_double(full, v);
      else if (full == "solver.snapshots") c.snapshots = to_list(full, v);
      else if (full == "solver.alpha") c.alpha = to_double(full, v);
      else if (full == "study.initial") c.initial = v;
      else if (full == "study.epsilons") c.epsilons = to_list(full, v);
      else if (full == "study.method") c.method = v;
      else if (full == "study.self_error_fraction") c.self_error_fraction = to_double(full, v);
      else if (full == "study.upper_ratio") c.upper_ratio = to_double(full, v);
      else if (full == "study.holder_alpha") c.holder_alpha = to_double(full, v);
      else if (full == "study.times") c.times = to_list(full, v);
      else if (full == "study.pairs") c.pairs = to_unsigned(full, v);
      else if (full == "study.ells") c.ells = to_list(full, v);
      else if (full == "study.seed") c.seed = to_unsigned(full, v);
    }
  }
  c.validate();
  return c;
}

StudyConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace frachjb

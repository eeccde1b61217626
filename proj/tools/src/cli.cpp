#include "frachjb_cli/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "frachjb/config.hpp"
#include "frachjb/errors.hpp"
#include "frachjb/initial_data.hpp"
#include "frachjb/solver.hpp"
#include "frachjb/study.hpp"
#include "frachjb/suite.hpp"

namespace frachjb::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
};

StudyConfig resolve(const Options& o) {
  StudyConfig cfg;
  if (!o.config_path.empty()) cfg = load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.n) cfg.n = *o.n;
  cfg.validate();
  return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

fs::path prepare(const Options& o) {
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

int report_verdict(const SuiteVerdict& v, std::ostream& out) {
  for (const Check& c : v.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << format_double(c.measured) << " (" << c.relation
        << ")\n";
  }
  return v.pass ? kExitOk : kExitFailed;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const StudyConfig cfg = resolve(o);
  const fs::path dir = prepare(o);
  const Trajectory traj = solve(initial_datum(cfg.grid(), cfg.initial), cfg.hamiltonian_spec(), cfg.solver_config());
  nlohmann::ordered_json manifest;
  manifest["config_hash"] = cfg.hash();
  manifest["config"] = cfg.to_ini();
  manifest["snapshots"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.csv", k);
    std::ostringstream csv;
    write_csv(csv, traj.fields[k]);
    write_file(dir / name, csv.str());
    manifest["snapshots"].push_back({{"time", traj.times[k]}, {"file", name}});
  }
  manifest["warnings"] = traj.warnings;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  for (const std::string& w : traj.warnings) out << "warning: " << w << "\n";
  out << "wrote " << traj.size() << " snapshots to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_operator_check(const Options& o, std::ostream& out) {
  const StudyConfig cfg = resolve(o);
  const SuiteVerdict v = run_operator_check(cfg.n, cfg.seed);
  write_file(prepare(o) / "operator_check.json", v.to_json());
  return report_verdict(v, out);
}

int cmd_rate_study(const Options& o, std::ostream& out) {
  const StudyConfig cfg = resolve(o);
  const RateReport rep = run_rate_study(cfg);
  const fs::path dir = prepare(o);
  write_file(dir / "rate.csv", rep.to_csv());
  write_file(dir / "rate.json", rep.to_json());
  out << rep.to_csv();
  return report_verdict(rep.verdict, out);
}

int cmd_regularity_study(const Options& o, std::ostream& out) {
  const StudyConfig cfg = resolve(o);
  const RegularityReport rep = run_regularity_study(cfg);
  write_file(prepare(o) / "regularity.json", rep.to_json());
  for (const RegularityRow& r : rep.rows) {
    out << "t = " << format_double(r.t) << "  c1alpha = " << format_double(r.c1alpha) << "\n";
  }
  return report_verdict(rep.verdict, out);
}

int cmd_property_suite(const Options& o, std::ostream& out) {
  const StudyConfig cfg = resolve(o);
  const SuiteVerdict v = run_property_suite(cfg);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(v.to_json());
  j["config_hash"] = cfg.hash();
  j["config"] = cfg.to_ini();
  write_file(prepare(o) / "property_suite.json", j.dump(2) + "\n");
  return report_verdict(v, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for HJB equations with fractional diffusion", "frac-hjb"};
  app.require_subcommand(1);
  Options opts;
  std::uint64_t seed = 0;
  std::size_t n = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opts.config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed for all randomness");
    sub->add_option("--n", n, "Points per axis (overrides grid.n)");
  };
  CLI::App* solve_cmd = app.add_subcommand("solve", "Integrate one configuration and export snapshots");
  CLI::App* op_cmd = app.add_subcommand("operator-check", "Check fractional operator invariants");
  CLI::App* rate_cmd = app.add_subcommand("rate-study", "Vanishing-viscosity error against an oracle");
  CLI::App* reg_cmd = app.add_subcommand("regularity-study", "C^{1,alpha} norms and oscillation decay");
  CLI::App* suite_cmd = app.add_subcommand("property-suite", "Comparison, stability and regularity properties");
  for (CLI::App* sub : {solve_cmd, op_cmd, rate_cmd, reg_cmd, suite_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed")) opts.seed = seed;
  if (chosen->count("--n")) opts.n = n;

  try {
    if (chosen == solve_cmd) return cmd_solve(opts, out);
    if (chosen == op_cmd) return cmd_operator_check(opts, out);
    if (chosen == rate_cmd) return cmd_rate_study(opts, out);
    if (chosen == reg_cmd) return cmd_regularity_study(opts, out);
    return cmd_property_suite(opts, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace frachjb::cli

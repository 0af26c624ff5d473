// Command-line front end: analytic point queries, Monte Carlo estimates,
// config-driven experiment sweeps with CSV output, and the built-in
// verification suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "terascope/acceptance.hpp"
#include "terascope/channel.hpp"
#include "terascope/config.hpp"
#include "terascope/coverage.hpp"
#include "terascope/experiment.hpp"
#include "terascope/sim.hpp"

namespace {

namespace fs = std::filesystem;
using namespace terascope;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Base seed precedence: --seed, then the config's own seed, then the
// TERASCOPE_SEED environment variable, then 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed,
                           const std::optional<std::uint64_t>& config_seed) {
  if (cli_seed) return *cli_seed;
  if (config_seed) return *config_seed;
  if (const char* env = std::getenv("TERASCOPE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::runtime_error(
          std::string("TERASCOPE_SEED is not a valid seed: ") + env);
    }
  }
  return 0;
}

ConfigParams load_defaults(const std::string& config_path) {
  if (config_path.empty()) return ConfigParams{};
  return parse_config(read_file(config_path)).defaults;
}

SimMode parse_sim_mode(const std::string& text) {
  if (text == "full") return SimMode::full;
  if (text == "interference-only") return SimMode::interference_only;
  if (text == "blockage-only") return SimMode::blockage_only;
  if (text == "dominant-only") return SimMode::dominant_only;
  throw CLI::ValidationError("--mode", "unknown mode '" + text + "'");
}

int cmd_analytic(const std::string& config_path, double x0) {
  const SystemParams p = load_defaults(config_path).to_system_params();
  std::cout << "x0=" << format_double(x0) << '\n';
  try {
    const DerivedParams d = derive_params(p);
    const CoverageResult c = coverage(p, d, x0);
    std::cout << "R_T=" << format_double(d.r_t) << '\n';
    std::cout << "p_L=" << format_double(c.p_L) << '\n';
    std::cout << "p_cL=" << format_double(c.p_cL) << '\n';
    std::cout << "p_c=" << format_double(c.p_c) << '\n';
    std::cout << "Lambda=" << format_double(c.Lambda) << '\n';
    std::cout << "Omega=" << format_double(c.Omega) << '\n';
    std::cout << "D=" << (c.D ? format_double(*c.D) : "none") << '\n';
    if (!c.snr_feasible) std::cout << "note=snr-infeasible\n";
    if (c.out_of_association) std::cout << "note=out-of-association\n";
  } catch (const infeasible_geometry&) {
    std::cout << "p_c=0\nnote=snr-infeasible\n";
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, double x0,
                 const std::string& mode_text, std::uint64_t trials,
                 const std::optional<std::uint64_t>& cli_seed, int threads) {
  const SystemParams p = load_defaults(config_path).to_system_params();
  const SimMode mode = parse_sim_mode(mode_text);
  const std::uint64_t seed = resolve_seed(cli_seed, std::nullopt);
  const Estimate e = estimate_coverage(p, x0, trials, mode, seed, threads);
  std::cout << "mode=" << to_string(e.mode) << '\n';
  std::cout << "x0=" << format_double(x0) << '\n';
  std::cout << "value=" << format_double(e.value) << '\n';
  std::cout << "half_width_95=" << format_double(e.half_width_95) << '\n';
  std::cout << "trials=" << e.n_trials << '\n';
  std::cout << "seed=" << e.seed << '\n';
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   const std::optional<std::uint64_t>& cli_seed,
                   const std::optional<std::uint64_t>& cli_trials,
                   int threads) {
  ParsedConfig config = parse_config(read_file(config_path));
  if (config.experiments.empty()) {
    std::cerr << "error: config defines no experiments\n";
    return 1;
  }

  // --out names the output file when there is exactly one experiment and the
  // path does not look like (or already is) a directory; otherwise it is a
  // directory receiving one <name>.csv per experiment.
  const bool single = config.experiments.size() == 1;
  const bool out_is_dir = out_path.empty() || fs::is_directory(out_path) ||
                          out_path.back() == '/' || !single;
  if (out_is_dir && !out_path.empty()) fs::create_directories(out_path);

  bool all_rows = true;
  for (ExperimentSpec& spec : config.experiments) {
    spec.base_seed = resolve_seed(
        cli_seed, spec.seed_explicit ? std::optional<std::uint64_t>(spec.base_seed)
                                     : std::nullopt);
    if (cli_trials) spec.n_trials = *cli_trials;
    try {
      const CoverageCurve curve = run_experiment(spec, threads);
      if (curve.rows.size() != spec.values.size()) {
        std::cerr << "error: experiment '" << spec.name
                  << "' produced " << curve.rows.size() << " of "
                  << spec.values.size() << " rows\n";
        all_rows = false;
        continue;
      }
      const fs::path dest = out_is_dir
          ? fs::path(out_path.empty() ? "." : out_path) / (spec.name + ".csv")
          : fs::path(out_path);
      std::ofstream out(dest, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << dest.string() << '\n';
        all_rows = false;
        continue;
      }
      const std::size_t bytes = emit_csv(curve, out);
      std::cout << "wrote " << dest.string() << " (" << bytes << " bytes, "
                << curve.rows.size() << " rows)\n";
    } catch (const std::exception& e) {
      std::cerr << "error: experiment '" << spec.name << "': " << e.what()
                << '\n';
      all_rows = false;
    }
  }
  return all_rows ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coverage analysis for dense terahertz networks: blockage-aware "
      "analytic coverage probability and its Monte Carlo ground truth."};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  int threads = 1;
  double x0 = 5.0;
  std::string mode_text = "full";

  CLI::App* analytic =
      app.add_subcommand("analytic", "Closed-form coverage at one distance");
  analytic->add_option("--config", config_path, "Config file for parameters");
  analytic->add_option("--x0", x0, "Tagged link ground distance in meters");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo coverage estimate");
  simulate->add_option("--config", config_path, "Config file for parameters");
  simulate->add_option("--x0", x0, "Tagged link ground distance in meters");
  simulate->add_option("--mode", mode_text,
                       "full | interference-only | blockage-only | "
                       "dominant-only");
  std::uint64_t trials_direct = 10000;
  simulate->add_option("--trials", trials_direct, "Number of trials");
  simulate->add_option("--seed", seed, "Base seed");
  simulate->add_option("--threads", threads, "Worker threads");

  CLI::App* experiment =
      app.add_subcommand("experiment", "Run config-defined sweeps to CSV");
  experiment->add_option("--config", config_path, "Experiment config file")
      ->required();
  experiment->add_option("--out", out_path,
                         "Output CSV file (single experiment) or directory");
  experiment->add_option("--seed", seed, "Base seed override");
  experiment->add_option("--trials", trials,
                         "Trial-count override for Monte Carlo modes");
  experiment->add_option("--threads", threads, "Worker threads");

  CLI::App* validate =
      app.add_subcommand("validate", "Run the built-in verification suite");
  validate->add_option("--threads", threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic->parsed()) return cmd_analytic(config_path, x0);
    if (simulate->parsed()) {
      return cmd_simulate(config_path, x0, mode_text, trials_direct, seed,
                          threads);
    }
    if (experiment->parsed()) {
      return cmd_experiment(config_path, out_path, seed, trials, threads);
    }
    if (validate->parsed()) {
      return run_acceptance(std::cout, AcceptanceOptions{threads});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

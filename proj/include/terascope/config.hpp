#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "terascope/channel.hpp"

// Experiment configuration: a flat, line-oriented key=value document with one
// `[experiment NAME]` section per experiment. Keys before the first section
// set defaults inherited by every experiment. Values use config units
// (dBm/dBi/dB where the key says so); conversion to linear happens here and
// nowhere else. Unknown keys are rejected with line context.
//
// A document whose every non-blank line starts with `#` is treated as a
// `# `-prefixed document and parsed after stripping the prefix — this makes
// the provenance preamble of an emitted CSV directly parseable.

namespace terascope {

inline constexpr const char* kToolVersion = "1.0.0";

// Raw parameter view, one field per config key. B_GHz is carried as
// metadata only (the coverage model has no bandwidth dependence).
struct ConfigParams {
  double h_A = 3.0;
  double h_U = 1.0;
  double h_B = 1.5;
  double r_B = 0.3;
  double f = 1.07e12;
  double K = 0.192;
  double P_T_dBm = 20.0;
  double sigma2_dBm = -74.4;
  double G_A_dBi = 17.5;
  double G_U_dBi = 12.5;
  double lambda_A = 0.1;
  double lambda_B = 0.2;
  double tau_dB = 3.0;
  double B_GHz = 10.0;

  // Converts to linear units and derives the square beam patterns from the
  // gains; throws (naming the violated invariant) when inconsistent.
  SystemParams to_system_params() const;

  bool operator==(const ConfigParams&) const = default;
};

enum class SweepVariable { x0, tau_dB, lambda_A, lambda_B, G_A_dBi, G_U_dBi };

enum class RunMode {
  analytic,
  mc_full,
  mc_interference_only,
  mc_blockage_only,
  mc_dominant_only,
};

std::string to_string(SweepVariable v);
std::string to_string(RunMode m);
bool is_mc(RunMode m);

struct ExperimentSpec {
  std::string name;
  ConfigParams params;
  SweepVariable sweep = SweepVariable::x0;
  std::vector<double> values;  // strictly monotone
  std::vector<RunMode> modes = {RunMode::analytic};
  std::uint64_t n_trials = 10000;
  std::uint64_t base_seed = 0;
  bool seed_explicit = false;  // whether the document carried a seed key
  bool los_conditioned = false;  // report coverage given a LoS tagged link
  double x0 = 5.0;  // fixed link distance for sweeps over other variables
  std::string version = kToolVersion;
};

// Equality over everything an experiment means (seed_explicit is resolution
// bookkeeping, not content).
bool operator==(const ExperimentSpec& a, const ExperimentSpec& b);

struct ParsedConfig {
  ConfigParams defaults;
  std::vector<ExperimentSpec> experiments;
};

ParsedConfig parse_config(const std::string& text);

// Inverse of parse_config for one experiment: every key, resolved, in a
// fixed order, formatted as shortest round-trip decimals.
std::string serialize_spec(const ExperimentSpec& spec);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace terascope

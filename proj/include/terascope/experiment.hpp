#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "terascope/config.hpp"

// Experiment orchestration: evaluates every requested mode at every sweep
// value and serializes the result as a deterministic CSV whose `#` preamble
// is the experiment's own configuration.

namespace terascope {

struct CurveRow {
  double abscissa = 0.0;
  std::vector<double> values;       // one per mode, in spec.modes order
  std::vector<double> half_widths;  // 0 for the analytic mode
  std::string note;  // "", "snr-infeasible", "out-of-association", or both
};

struct CoverageCurve {
  ExperimentSpec spec;
  std::vector<CurveRow> rows;
  // Provenance. The timestamp stays in memory only: emitted bytes must be
  // identical across runs of the same spec and seed.
  std::string tool_version;
  std::uint64_t seed = 0;
  std::string timestamp;
};

// Runs the sweep. Monte Carlo modes of one sweep point share a single trial
// set. `threads` changes wall time only, never values.
CoverageCurve run_experiment(const ExperimentSpec& spec, int threads = 1);

// Writes the provenance preamble, a header row, and one row per sweep value;
// returns the byte count written. Output is byte-identical for equal curves.
std::size_t emit_csv(const CoverageCurve& curve, std::ostream& out);

std::string csv_string(const CoverageCurve& curve);

}  // namespace terascope

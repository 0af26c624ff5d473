#include <sstream>
#include <string>

#include "doctest.h"
#include "terascope/coverage.hpp"
#include "terascope/experiment.hpp"
#include "terascope/sim.hpp"

using namespace terascope;

namespace {

ExperimentSpec analytic_distance_spec() {
  return parse_config(
             "[experiment distance]\n"
             "values = 1, 3, 5, 7, 9\n")
      .experiments[0];
}

}  // namespace

TEST_CASE("analytic sweep rows carry exact coverage values") {
  const ExperimentSpec spec = analytic_distance_spec();
  const CoverageCurve curve = run_experiment(spec);
  REQUIRE(curve.rows.size() == 5);
  const SystemParams p = spec.params.to_system_params();
  for (const CurveRow& row : curve.rows) {
    REQUIRE(row.values.size() == 1);
    CHECK(row.values[0] == coverage(p, row.abscissa).p_c);
    CHECK(row.half_widths[0] == 0.0);
    CHECK(row.note.empty());
  }
  CHECK(curve.tool_version == kToolVersion);
  CHECK_FALSE(curve.timestamp.empty());
}

TEST_CASE("LoS-conditioned sweeps report the conditional probability") {
  ExperimentSpec spec = analytic_distance_spec();
  spec.los_conditioned = true;
  const CoverageCurve curve = run_experiment(spec);
  const SystemParams p = spec.params.to_system_params();
  for (const CurveRow& row : curve.rows) {
    CHECK(row.values[0] == coverage(p, row.abscissa).p_cL);
  }
}

TEST_CASE("sweep points beyond the feasible regime are annotated") {
  // tau sweep at x0 = 5: the link supports just over 12.25 dB there, and
  // somewhat past 13 dB no distance supports the threshold at all.
  const ExperimentSpec spec =
      parse_config(
          "[experiment threshold]\n"
          "sweep = tau_dB\n"
          "values = 3, 12, 13, 25\n")
          .experiments[0];
  const CoverageCurve curve = run_experiment(spec);
  REQUIRE(curve.rows.size() == 4);
  CHECK(curve.rows[0].note.empty());
  CHECK(curve.rows[1].note.empty());
  CHECK(curve.rows[2].note == "snr-infeasible;out-of-association");
  CHECK(curve.rows[2].values[0] == 0.0);
  // At 25 dB derive_params itself reports an unreachable threshold.
  CHECK(curve.rows[3].note == "snr-infeasible");
  CHECK(curve.rows[3].values[0] == 0.0);

  // Distance sweep past the association radius (9.81 m).
  const ExperimentSpec far =
      parse_config("[experiment far]\nvalues = 9, 10\n").experiments[0];
  const CoverageCurve fc = run_experiment(far);
  CHECK(fc.rows[0].note.empty());
  CHECK(fc.rows[1].note == "snr-infeasible;out-of-association");
}

TEST_CASE("monte carlo modes share one trial set per sweep point") {
  const ExperimentSpec spec =
      parse_config(
          "[experiment mc]\n"
          "values = 5\n"
          "modes = mc-full, mc-blockage-only, analytic\n"
          "trials = 2000\n"
          "seed = 99\n")
          .experiments[0];
  const CoverageCurve curve = run_experiment(spec);
  REQUIRE(curve.rows.size() == 1);
  const CurveRow& row = curve.rows[0];
  REQUIRE(row.values.size() == 3);

  const SystemParams p = spec.params.to_system_params();
  const CoverageTally t = tally_coverage(p, 5.0, 2000, 99);
  CHECK(row.values[0] == double(t.full) / 2000.0);
  CHECK(row.values[1] == double(t.blockage_only) / 2000.0);
  CHECK(row.values[2] == coverage(p, 5.0).p_c);  // analytic: no half-width
  CHECK(row.half_widths[0] > 0.0);
  CHECK(row.half_widths[2] == 0.0);
  CHECK(curve.seed == 99);
}

TEST_CASE("LoS-conditioned Monte Carlo uses the forced-LoS counters") {
  const ExperimentSpec spec =
      parse_config(
          "[experiment mc-los]\n"
          "values = 5\n"
          "modes = mc-full, mc-blockage-only, mc-dominant-only\n"
          "trials = 2000\n"
          "seed = 7\n"
          "los_conditioned = true\n")
          .experiments[0];
  const CoverageCurve curve = run_experiment(spec);
  const SystemParams p = spec.params.to_system_params();
  const CoverageTally t = tally_coverage(p, 5.0, 2000, 7);
  const CurveRow& row = curve.rows[0];
  CHECK(row.values[0] == double(t.full_given_los) / 2000.0);
  CHECK(row.values[1] == 1.0);  // given LoS, only the (feasible) SNR remains
  CHECK(row.values[2] == double(t.dominant_only_given_los) / 2000.0);
}

TEST_CASE("emitted CSV is deterministic, parseable, and self-describing") {
  const ExperimentSpec spec =
      parse_config(
          "[experiment csv]\n"
          "values = 2, 5\n"
          "modes = analytic, mc-full\n"
          "trials = 1000\n"
          "seed = 5\n")
          .experiments[0];
  const CoverageCurve a = run_experiment(spec, 1);
  const CoverageCurve b = run_experiment(spec, 4);
  const std::string text_a = csv_string(a);
  CHECK(text_a == csv_string(b));  // thread count never changes the bytes

  // Header names the modes in order; every row is present.
  CHECK(text_a.find("abscissa,analytic_p,analytic_hw,mc-full_p,mc-full_hw,note\n") !=
        std::string::npos);
  CHECK(a.rows.size() == 2);

  // The timestamp lives in memory only, never in the bytes.
  CHECK(text_a.find(a.timestamp) == std::string::npos);

  // The preamble alone reconstructs the experiment.
  std::istringstream in(text_a);
  std::string line, preamble;
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
    preamble += line + "\n";
  }
  const ParsedConfig round = parse_config(preamble);
  REQUIRE(round.experiments.size() == 1);
  CHECK(round.experiments[0] == spec);

  // emit_csv reports the byte count it wrote.
  std::ostringstream sink;
  CHECK(emit_csv(a, sink) == text_a.size());
  CHECK(sink.str() == text_a);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "terascope/coverage.hpp"

// Monte Carlo validation: samples full 3D scenarios, applies the five
// interferer-activity conditions, and estimates every analytic quantity with
// binomial confidence intervals. Two evaluation paths exist, differing only
// in how link blockage is drawn:
//  - sample_scenario + evaluate_trial materializes one scenario whose single
//    blocker field blocks all links at once. That couples the links: blockers
//    near the UE threaten every link's blockage zone simultaneously, so LoS
//    states are positively correlated, which measurably depresses coverage at
//    the cell edge relative to the analytic chain.
//  - tally_coverage / estimate_coverage (the estimators behind the CLI) draw
//    the identical interferer variates but give every link an independent
//    blockage draw with that link's exact LoS probability -- equal in law to
//    testing each link against a fresh blocker field of its own, and exactly
//    the independence the analytic formulas assume. These estimators converge
//    to the analytic quantities; the materialized path exposes the physically
//    coupled variant for study.

namespace terascope {

struct Interferer {
  Vec2 position;
  double beam_azimuth = 0.0;    // [0, 2pi)
  double beam_elevation = 0.0;  // [beta_bar, pi/2]
};

struct Scenario {
  Vec2 tagged_ue;  // origin by convention
  Vec2 tagged_ap;  // (x0, 0)
  std::vector<Interferer> interferers;
  std::vector<Blocker> blockers;
  double sim_radius = 0.0;
};

struct TrialOutcome {
  std::optional<double> sinr;  // absent when the tagged link is blocked
  bool tagged_blocked = false;
  std::size_t n_active_interferers = 0;
  double aggregate_interference = 0.0;  // W, over active interferers
  bool dominant_only_covered = false;
  bool full_covered = false;
};

enum class SimMode { full, interference_only, blockage_only, dominant_only };

std::string to_string(SimMode mode);

struct Estimate {
  double value = 0.0;
  double half_width_95 = 0.0;  // 1.96 * sqrt(value (1 - value) / n_trials)
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::full;
};

// Disc radius large enough that truncating the interferer field is harmless:
// smallest R with received_power(R) < sigma2/1000 and residual activity
// probability below 1e-4, pushed up to 3 R_T and capped at 200 m.
double simulation_radius(const SystemParams& params);
double simulation_radius(const SystemParams& params,
                         const DerivedParams& derived);

// Blocker field disc radius that guarantees no blockage zone is truncated.
double blocker_disc_radius(const SystemParams& params, double sim_radius);

Scenario sample_scenario(const SystemParams& params, double x0,
                         std::uint64_t seed);

// Identical draws, but the blocker field is restricted to the disc that can
// intersect any blockage zone of this trial (same point-process law for
// every link indicator; far cheaper to evaluate).
Scenario sample_scenario_restricted(const SystemParams& params, double x0,
                                    std::uint64_t seed);

TrialOutcome evaluate_trial(const Scenario& scenario,
                            const SystemParams& params);

// Indicator counts for all estimator modes gathered in one pass over the
// trials (integer sums, so the result is independent of thread count).
struct CoverageTally {
  std::uint64_t n_trials = 0;
  std::uint64_t full = 0;
  std::uint64_t interference_only = 0;
  std::uint64_t blockage_only = 0;
  std::uint64_t dominant_only = 0;
  // Tagged link forced to LoS, interferer blockage kept: estimates p_cL.
  std::uint64_t full_given_los = 0;
  std::uint64_t dominant_only_given_los = 0;
  // Trials covered under full interference but not under dominant-only;
  // must be zero (removing interferers cannot hurt).
  std::uint64_t dominance_violations = 0;

  CoverageTally& operator+=(const CoverageTally& other);
};

// Per-trial randomness derives from trial_seed(base_seed, trial_index) and is
// split into fixed-purpose substreams, so every estimate is reproducible from
// the base seed alone: purpose 0 feeds the interferer field (the same draws
// sample_scenario consumes), purpose 1 feeds the blocker field of
// materialized scenarios, and purpose 2 feeds the estimators' per-link
// blockage indicators -- one uniform for the tagged link, then one per
// interferer that survives the geometric conditions, in sampling order.
CoverageTally tally_coverage(const SystemParams& params, double x0,
                             std::uint64_t n_trials, std::uint64_t base_seed,
                             int threads = 1);

Estimate estimate_coverage(const SystemParams& params, double x0,
                           std::uint64_t n_trials, SimMode mode,
                           std::uint64_t base_seed, int threads = 1);

// Empirical check of the vertical hit probability: samples interferer beam
// elevations and counts hits on a link of ground distance x.
Estimate estimate_p_hit_vertical(const SystemParams& params, double x,
                                 std::uint64_t n_trials, std::uint64_t seed);

}  // namespace terascope

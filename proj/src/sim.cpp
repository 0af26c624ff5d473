#include "terascope/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "terascope/numerics.hpp"
#include "terascope/rng.hpp"

namespace terascope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Purpose tags for the per-trial random substreams. Materialized scenarios
// draw a blocker field from kStreamBlockers; the fused estimator path instead
// draws per-link blockage indicators from kStreamLinkBlockage, so the two
// paths share interferer variates without colliding on blockage randomness.
constexpr std::uint64_t kStreamInterferers = 0;
constexpr std::uint64_t kStreamBlockers = 1;
constexpr std::uint64_t kStreamLinkBlockage = 2;

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

// Everything a trial needs, derived once per (params, x0).
struct SimContext {
  SystemParams p;
  DerivedParams derived;
  double x0 = 0.0;
  double sim_radius = 0.0;
  double mean_interferers = 0.0;
  double pr0 = 0.0;           // tagged received power
  bool snr_ok = false;        // pr0 / sigma2 >= tau
  double p_los_tagged = 1.0;  // LoS probability of the tagged link
  double half_uh_frac = 0.0;  // phi_UH / (4 pi): condition-1 width in turns
  double half_ah_frac = 0.0;  // phi_AH / (4 pi): condition-3 width in turns
  double r_min = 0.0;         // condition-2 radial window
  double r_max = 0.0;
  double cot_half_av = 0.0;   // cot(phi_AV / 2) for the condition-4 test

  SimContext(const SystemParams& params, const DerivedParams& der, double x)
      : p(params), derived(der), x0(x) {
    sim_radius = simulation_radius(p, derived);
    mean_interferers = p.lambda_A * kPi * sim_radius * sim_radius;
    pr0 = received_power(p, x0);
    snr_ok = pr0 >= p.tau * p.sigma2;
    p_los_tagged = los_probability(p, x0);
    half_uh_frac = p.ue_pattern.phi_H / (2.0 * kTwoPi);
    half_ah_frac = p.ap_pattern.phi_H / (2.0 * kTwoPi);
    const VerticalWindow w = vertical_window(p, derived, x0);
    r_min = w.r_min;
    r_max = w.r_max;
    cot_half_av = 1.0 / std::tan(p.ap_pattern.phi_V / 2.0);
  }

  double received(double r) const {
    const double d2 = derived.h * derived.h + r * r;
    return derived.rho / d2 * std::exp(-p.K * std::sqrt(d2));
  }

  // Condition 4 without trigonometry: the interferer beam elevation
  // beta = arctan(h / v) lies within phi_AV/2 of the link elevation
  // arctan(h / r) iff v falls in a rational window of c = r / h.
  bool ap_vertical_hit(double r, double v) const {
    const double c = r / derived.h;
    const double k = cot_half_av;
    if (k > c && v > derived.h * (c * k + 1.0) / (k - c)) return false;
    if (c * k > 1.0 && v < derived.h * (c * k - 1.0) / (c + k)) return false;
    return true;
  }
};

struct TrialFlags {
  bool tagged_blocked = false;
  bool full = false;
  bool interference_only = false;
  bool blockage_only = false;
  bool dominant_only = false;
  bool full_given_los = false;
  bool dominant_only_given_los = false;
};

TrialFlags fused_trial(const SimContext& c, std::uint64_t scenario_seed) {
  TrialFlags out;
  // Condition-5 randomness: every link gets an independent blockage draw at
  // that link's exact LoS probability, matching the independence the analytic
  // chain assumes (see the header note). The stream spends one uniform on the
  // tagged link, then one per interferer surviving conditions 1-4, in
  // sampling order, so the layout is reproducible from a scenario seed alone.
  SplitMix64 blockage = substream(scenario_seed, 0, kStreamLinkBlockage);
  out.tagged_blocked = blockage.next_double() >= c.p_los_tagged;

  SplitMix64 rng = substream(scenario_seed, 0, kStreamInterferers);
  const std::uint64_t n = poisson(rng, c.mean_interferers);
  double sum_candidates = 0.0;  // conditions 1-4 (blockage forced off)
  double sum_active = 0.0;      // all five conditions
  double closest_r = kInf;
  double closest_power = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    // Fixed draw order keeps the stream position independent of rejections,
    // so these are exactly the variates sample_scenario would consume.
    const double u_r = rng.next_double();
    const double u_theta = rng.next_double();
    const double u_az = rng.next_double();
    const double u_v = rng.next_double();
    // Condition 1 (tagged UE's horizontal beam, aimed at azimuth 0),
    // tested directly on the angle fraction.
    if (u_theta > c.half_uh_frac && 1.0 - u_theta > c.half_uh_frac) continue;
    // Condition 3 (interferer's horizontal beam must cover the UE): the
    // UE sits at angle fraction u_theta + 1/2 from the interferer.
    const double back =
        u_theta < 0.5 ? u_theta + 0.5 : u_theta - 0.5;
    double sep = std::abs(u_az - back);
    if (sep > 0.5) sep = 1.0 - sep;
    if (sep > c.half_ah_frac) continue;
    // Condition 2 (tagged UE's vertical beam) as the radial window.
    const double r = c.sim_radius * std::sqrt(u_r);
    if (r < c.r_min || r > c.r_max) continue;
    // Condition 4 (interferer's vertical beam).
    const double v = c.derived.r_t * std::sqrt(u_v);
    if (!c.ap_vertical_hit(r, v)) continue;

    const double power = c.received(r);
    sum_candidates += power;
    // Condition 5 (LoS of the interfering link).
    if (blockage.next_double() >= los_probability(c.p, r)) continue;
    sum_active += power;
    if (r < closest_r) {
      closest_r = r;
      closest_power = power;
    }
  }

  const double threshold = c.p.tau;
  const bool full_sinr_ok =
      c.pr0 / (c.p.sigma2 + sum_active) >= threshold;
  const bool dominant_sinr_ok =
      c.pr0 / (c.p.sigma2 + closest_power) >= threshold;
  out.full = !out.tagged_blocked && full_sinr_ok;
  out.interference_only = c.pr0 / (c.p.sigma2 + sum_candidates) >= threshold;
  out.blockage_only = !out.tagged_blocked && c.snr_ok;
  out.dominant_only = !out.tagged_blocked && dominant_sinr_ok;
  out.full_given_los = full_sinr_ok;
  out.dominant_only_given_los = dominant_sinr_ok;
  return out;
}

CoverageTally tally_range(const SimContext& c, std::uint64_t base_seed,
                          std::uint64_t first, std::uint64_t count) {
  CoverageTally t;
  t.n_trials = count;
  for (std::uint64_t i = first; i < first + count; ++i) {
    const TrialFlags f = fused_trial(c, trial_seed(base_seed, i));
    t.full += f.full;
    t.interference_only += f.interference_only;
    t.blockage_only += f.blockage_only;
    t.dominant_only += f.dominant_only;
    t.full_given_los += f.full_given_los;
    t.dominant_only_given_los += f.dominant_only_given_los;
    t.dominance_violations += f.full && !f.dominant_only;
  }
  return t;
}

Scenario sample_scenario_impl(const SystemParams& p, double x0,
                              std::uint64_t seed, double blocker_disc) {
  const DerivedParams derived = derive_params(p);
  Scenario s;
  s.tagged_ue = Vec2{0.0, 0.0};
  s.tagged_ap = Vec2{x0, 0.0};
  s.sim_radius = simulation_radius(p, derived);

  SplitMix64 rng = substream(seed, 0, kStreamInterferers);
  const std::uint64_t n =
      poisson(rng, p.lambda_A * kPi * s.sim_radius * s.sim_radius);
  s.interferers.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u_r = rng.next_double();
    const double u_theta = rng.next_double();
    const double u_az = rng.next_double();
    const double u_v = rng.next_double();
    const double r = s.sim_radius * std::sqrt(u_r);
    const double theta = kTwoPi * u_theta;
    Interferer it;
    it.position = Vec2{r * std::cos(theta), r * std::sin(theta)};
    it.beam_azimuth = kTwoPi * u_az;
    it.beam_elevation = std::atan2(derived.h, derived.r_t * std::sqrt(u_v));
    s.interferers.push_back(it);
  }

  SplitMix64 brng = substream(seed, 0, kStreamBlockers);
  const std::uint64_t nb =
      poisson(brng, p.lambda_B * kPi * blocker_disc * blocker_disc);
  s.blockers.reserve(nb);
  for (std::uint64_t i = 0; i < nb; ++i) {
    const double r = blocker_disc * std::sqrt(brng.next_double());
    const double theta = kTwoPi * brng.next_double();
    s.blockers.push_back(
        Blocker{Vec2{r * std::cos(theta), r * std::sin(theta)}, p.r_B, p.h_B});
  }
  return s;
}

}  // namespace

std::string to_string(SimMode mode) {
  switch (mode) {
    case SimMode::full: return "full";
    case SimMode::interference_only: return "interference-only";
    case SimMode::blockage_only: return "blockage-only";
    case SimMode::dominant_only: return "dominant-only";
  }
  return "unknown";
}

double simulation_radius(const SystemParams& p) {
  return simulation_radius(p, derive_params(p));
}

double simulation_radius(const SystemParams& p, const DerivedParams& derived) {
  // Power tail: received_power below sigma2 / 1000.
  const double target = p.sigma2 / 1000.0;
  double d;
  if (p.K == 0.0) {
    d = std::sqrt(derived.rho / target);
  } else {
    d = 2.0 / p.K * lambert_w0(0.5 * p.K * std::sqrt(derived.rho / target));
  }
  const double rad = d * d - derived.h * derived.h;
  const double power_reach = rad > 0.0 ? std::sqrt(rad) : 0.0;
  // Activity tail: residual LoS-and-aligned probability below 1e-4.
  const double at_origin = derived.zeta * p.ap_pattern.phi_H / kTwoPi;
  double activity_reach = 0.0;
  if (at_origin > 1e-4) {
    activity_reach =
        derived.eta > 0.0 ? std::log(at_origin * 1e4) / derived.eta : kInf;
  }
  double radius = std::max(power_reach, activity_reach);
  radius = std::max(radius, 3.0 * derived.r_t);
  return std::min(radius, 200.0);
}

double blocker_disc_radius(const SystemParams& p, double sim_radius) {
  return sim_radius + blockage_zone_length(p, sim_radius, p.r_B, p.h_B);
}

Scenario sample_scenario(const SystemParams& p, double x0,
                         std::uint64_t seed) {
  const double R = simulation_radius(p);
  return sample_scenario_impl(p, x0, seed, blocker_disc_radius(p, R));
}

Scenario sample_scenario_restricted(const SystemParams& p, double x0,
                                    std::uint64_t seed) {
  const double R = simulation_radius(p);
  const double reach = std::max(R, x0);
  const double disc = blockage_zone_length(p, reach, p.r_B, p.h_B) + p.r_B;
  return sample_scenario_impl(p, x0, seed, disc);
}

TrialOutcome evaluate_trial(const Scenario& s, const SystemParams& p) {
  const double h = p.height_gap();
  const double x0 = std::hypot(s.tagged_ap.x, s.tagged_ap.y);
  const double theta0 = std::atan2(s.tagged_ap.y, s.tagged_ap.x);
  const double psi0 = std::atan2(h, x0);
  const double half_uh = p.ue_pattern.phi_H / 2.0;
  const double half_uv = p.ue_pattern.phi_V / 2.0;
  const double half_ah = p.ap_pattern.phi_H / 2.0;
  const double half_av = p.ap_pattern.phi_V / 2.0;

  TrialOutcome out;
  for (const Blocker& b : s.blockers) {
    if (is_link_blocked(p, s.tagged_ap, b)) {
      out.tagged_blocked = true;
      break;
    }
  }

  double closest_x = kInf;
  double closest_power = 0.0;
  for (const Interferer& it : s.interferers) {
    const double x = std::hypot(it.position.x, it.position.y);
    if (x == 0.0) continue;
    const double theta = std::atan2(it.position.y, it.position.x);
    if (std::abs(wrap_angle(theta - theta0)) > half_uh) continue;
    const double psi = std::atan2(h, x);
    if (std::abs(psi - psi0) > half_uv) continue;
    const double toward_ue = std::atan2(-it.position.y, -it.position.x);
    if (std::abs(wrap_angle(toward_ue - it.beam_azimuth)) > half_ah) continue;
    if (std::abs(psi - it.beam_elevation) > half_av) continue;
    bool blocked = false;
    for (const Blocker& b : s.blockers) {
      if (is_link_blocked(p, it.position, b)) {
        blocked = true;
        break;
      }
    }
    if (blocked) continue;
    const double power = received_power(p, x);
    out.aggregate_interference += power;
    ++out.n_active_interferers;
    if (x < closest_x) {
      closest_x = x;
      closest_power = power;
    }
  }

  const double pr0 = received_power(p, x0);
  if (!out.tagged_blocked) {
    out.sinr = pr0 / (p.sigma2 + out.aggregate_interference);
    out.full_covered = *out.sinr >= p.tau;
    out.dominant_only_covered = pr0 / (p.sigma2 + closest_power) >= p.tau;
  }
  return out;
}

CoverageTally& CoverageTally::operator+=(const CoverageTally& o) {
  n_trials += o.n_trials;
  full += o.full;
  interference_only += o.interference_only;
  blockage_only += o.blockage_only;
  dominant_only += o.dominant_only;
  full_given_los += o.full_given_los;
  dominant_only_given_los += o.dominant_only_given_los;
  dominance_violations += o.dominance_violations;
  return *this;
}

CoverageTally tally_coverage(const SystemParams& p, double x0,
                             std::uint64_t n_trials, std::uint64_t base_seed,
                             int threads) {
  const SimContext context(p, derive_params(p), x0);
  const std::uint64_t workers = std::max(
      std::uint64_t{1},
      std::min<std::uint64_t>(threads > 0 ? threads : 1, n_trials));
  if (workers == 1) return tally_range(context, base_seed, 0, n_trials);

  std::vector<CoverageTally> parts(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = n_trials / workers;
  const std::uint64_t rest = n_trials % workers;
  std::uint64_t first = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t count = chunk + (w < rest ? 1 : 0);
    pool.emplace_back([&, w, first, count] {
      parts[w] = tally_range(context, base_seed, first, count);
    });
    first += count;
  }
  for (auto& th : pool) th.join();
  CoverageTally total;
  for (const CoverageTally& part : parts) total += part;
  return total;
}

Estimate estimate_coverage(const SystemParams& p, double x0,
                           std::uint64_t n_trials, SimMode mode,
                           std::uint64_t base_seed, int threads) {
  const CoverageTally t = tally_coverage(p, x0, n_trials, base_seed, threads);
  std::uint64_t hits = 0;
  switch (mode) {
    case SimMode::full: hits = t.full; break;
    case SimMode::interference_only: hits = t.interference_only; break;
    case SimMode::blockage_only: hits = t.blockage_only; break;
    case SimMode::dominant_only: hits = t.dominant_only; break;
  }
  Estimate e;
  e.n_trials = n_trials;
  e.seed = base_seed;
  e.mode = mode;
  e.value = static_cast<double>(hits) / static_cast<double>(n_trials);
  e.half_width_95 =
      1.96 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n_trials));
  return e;
}

Estimate estimate_p_hit_vertical(const SystemParams& p, double x,
                                 std::uint64_t n_trials, std::uint64_t seed) {
  const DerivedParams derived = derive_params(p);
  const double psi = std::atan2(derived.h, x);
  const double half_av = p.ap_pattern.phi_V / 2.0;
  SplitMix64 rng = substream(seed, 0, kStreamInterferers);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    const double v = derived.r_t * std::sqrt(rng.next_double());
    const double beta = std::atan2(derived.h, v);
    hits += std::abs(psi - beta) <= half_av;
  }
  Estimate e;
  e.n_trials = n_trials;
  e.seed = seed;
  e.mode = SimMode::full;
  e.value = static_cast<double>(hits) / static_cast<double>(n_trials);
  e.half_width_95 =
      1.96 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n_trials));
  return e;
}

}  // namespace terascope

#pragma once

#include <cmath>
#include <cstdint>

// Counter-based splittable RNG. Every Monte Carlo draw in the project comes
// from a SplitMix64 stream whose initial state is a hash of
// (base_seed, trial_index, purpose), so results do not depend on how trials
// are scheduled across workers and the same trial always sees the same
// scenario no matter which estimator mode asks for it.

namespace terascope {

// SplitMix64 finalizer (Steele/Lea/Flood); also used as the seeding hash.
inline constexpr std::uint64_t mix_bits(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    return mix_bits(z);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Independent stream for (seed, counter, purpose). Distinct purposes give a
// scenario independent sub-streams (e.g. interferer field vs blocker field)
// so that changing how many draws one consumes never shifts the other.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t counter,
                            std::uint64_t purpose) {
  std::uint64_t s = mix_bits(seed + 0x9E3779B97F4A7C15ull * (purpose + 1));
  s = mix_bits(s ^ (0xD1B54A32D192ED03ull * (counter + 1)));
  return SplitMix64{s};
}

// Per-trial seed for estimators: counter-hash of base seed and trial index.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return mix_bits(base_seed ^ mix_bits(trial + 0x2545F4914F6CDD1Dull));
}

// Poisson sample. Knuth's product method below mean 10, Hormann's PTRS
// transformed rejection above. Hand-rolled rather than
// std::poisson_distribution because the standard library draw sequence is
// implementation-defined and the CSV determinism contract requires the
// artifact to own every consumed uniform.
inline std::uint64_t poisson(SplitMix64& rng, double mean) {
  if (mean <= 0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = rng.next_double();
    while (prod > limit) {
      ++k;
      prod *= rng.next_double();
    }
    return k;
  }
  // PTRS (W. Hormann, "The transformed rejection method for generating
  // Poisson random variables", 1993).
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mean - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace terascope

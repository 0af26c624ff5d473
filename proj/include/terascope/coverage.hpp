#pragma once

#include <optional>

#include "terascope/blockage.hpp"
#include "terascope/channel.hpp"

// Closed-form coverage chain: interference window geometry, beam hit
// probabilities, thinned dominant-interferer density, and the resulting
// coverage probability for a tagged link at ground distance x0.

namespace terascope {

// Quantities derived once from SystemParams and shared across the analytic
// and Monte Carlo paths.
struct DerivedParams {
  double h = 0.0;         // AP-UE height gap
  double rho = 0.0;       // channel prefactor
  double r_t = 0.0;       // maximum association radius R_T
  double beta_bar = 0.0;  // smallest possible AP beam elevation, arctan(h/R_T)
  double zeta = 1.0;      // LoS self-blockage factor
  double eta = 0.0;       // LoS decay rate
  double x_mu = 0.0;      // below x_mu the AP-beam window is clear of beta_bar
  double x_nu = 0.0;      // beyond x_nu the AP beam cannot point low enough
};

// Throws infeasible_geometry when the SNR threshold is unreachable even at
// x = 0 (via max_association_radius).
DerivedParams derive_params(const SystemParams& params);

// Ground-distance band of interferers that fall inside the tagged UE's
// vertical beam when it points at the tagged AP at distance x0.
struct VerticalWindow {
  double r_min = 0.0;  // >= 0
  double r_max = 0.0;  // may be +infinity
};

// Outcome of the dominant-radius computation. Sweeps legitimately cross the
// SNR-infeasible regime, so it is a value, not an exception.
struct DominantRadius {
  enum class Kind {
    snr_infeasible,  // P_r(x0) <= tau * sigma2: coverage is 0 outright
    none,            // threshold met below the height gap: no ground region
    radius,          // proper dominant region of the given ground radius
  };
  Kind kind = Kind::none;
  double value = 0.0;  // meaningful only when kind == radius

  bool is_radius() const { return kind == Kind::radius; }
};

struct CoverageResult {
  double p_c = 0.0;    // coverage probability
  double p_cL = 0.0;   // coverage probability conditioned on a LoS tagged link
  double p_L = 0.0;    // tagged-link LoS probability
  double Lambda = 0.0; // expected dominant-interferer count (+inf when the
                       // SNR threshold is infeasible, so p_cL = e^-Lambda = 0)
  std::optional<double> D;  // dominant radius, absent when no region exists
  double Omega = 0.0;  // total exponent: p_c = e^-Omega
  bool snr_feasible = true;
  bool out_of_association = false;  // x0 exceeded R_T
};

VerticalWindow vertical_window(const SystemParams& params, double x0);
VerticalWindow vertical_window(const SystemParams& params,
                               const DerivedParams& derived, double x0);

// Probability a random-azimuth interfering AP beam covers the tagged UE.
double p_hit_horizontal(const SystemParams& params);

// Probability the vertical beam of an interfering AP at ground distance
// x > 0 covers the tagged UE, marginalized over the AP's own association.
double p_hit_vertical(const SystemParams& params, double x);
double p_hit_vertical(const SystemParams& params, const DerivedParams& derived,
                      double x);

// p_hit_horizontal * p_hit_vertical * los_probability.
double interferer_activity_probability(const SystemParams& params, double x);

DominantRadius dominant_radius(const SystemParams& params, double x0);
DominantRadius dominant_radius(const SystemParams& params,
                               const DerivedParams& derived, double x0);

// Expected number of active interferers inside the dominant region (Lambda).
// Callers must rule out the SNR-infeasible regime first.
double thinned_density(const SystemParams& params, double x0);
double thinned_density(const SystemParams& params, const DerivedParams& derived,
                       double x0);

CoverageResult coverage(const SystemParams& params, double x0);
CoverageResult coverage(const SystemParams& params, const DerivedParams& derived,
                        double x0);

// Density of an interfering AP's beam elevation, supported on [beta_bar, pi/2].
double beta_pdf(const SystemParams& params, double beta);
double beta_pdf(const SystemParams& params, const DerivedParams& derived,
                double beta);

// Independent check of p_hit_vertical: integrates beta_pdf over the beam
// window instead of using the closed form. Relative error <= 1e-9.
double p_hit_vertical_by_quadrature(const SystemParams& params, double x);
double p_hit_vertical_by_quadrature(const SystemParams& params,
                                    const DerivedParams& derived, double x);

}  // namespace terascope

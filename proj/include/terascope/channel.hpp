#pragma once

#include <stdexcept>

// THz link budget: deterministic received power with spreading and molecular
// absorption loss, pyramidal-beam antenna gains, and the maximum association
// radius that keeps the unblocked SNR above threshold.

namespace terascope {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact SI value

// Pyramidal (no side lobe) beam: gain inside the horizontal x vertical
// beamwidth window, exactly zero outside.
struct AntennaPattern {
  double phi_H = 0.0;  // horizontal beamwidth, rad
  double phi_V = 0.0;  // vertical beamwidth, rad
  double gain = 1.0;   // linear boresight gain

  bool operator==(const AntennaPattern&) const = default;
};

struct SystemParams {
  double h_A = 0.0;       // AP height, m
  double h_U = 0.0;       // UE height, m
  double h_B = 0.0;       // blocker height, m
  double r_B = 0.0;       // blocker body radius, m
  double f = 0.0;         // carrier frequency, Hz
  double K = 0.0;         // molecular absorption coefficient, 1/m
  double P_T = 0.0;       // transmit power, W
  double sigma2 = 0.0;    // AWGN power, W
  AntennaPattern ap_pattern;
  AntennaPattern ue_pattern;
  double lambda_A = 0.0;  // AP density, 1/m^2
  double lambda_B = 0.0;  // blocker density, 1/m^2
  double tau = 0.0;       // SINR threshold, linear

  double height_gap() const { return h_A - h_U; }

  bool operator==(const SystemParams&) const = default;
};

// One UE->AP ray in the geometry the coverage analysis works in.
struct LinkGeometry {
  double x = 0.0;      // 2D ground distance, m
  double d = 0.0;      // 3D distance, m
  double theta = 0.0;  // azimuth, [0, 2pi)
  double psi = 0.0;    // elevation above horizontal, (0, pi/2]
};

// Thrown by max_association_radius (and everything downstream of it) when the
// SNR threshold cannot be met even directly under the AP.
struct infeasible_geometry : std::domain_error {
  using std::domain_error::domain_error;
};

// Checks the type invariants: height ordering, positivity, and antenna
// patterns consistent with the beamwidth/gain relation. Synthetic patterns
// outside that relation's domain (e.g. a full-circle horizontal beam used by
// degenerate tests) are deliberately constructible as plain aggregates; they
// just do not pass validation.
void validate(const SystemParams& params);

// G = pi / arcsin(tan(phi_H/2) tan(phi_V/2)).
double gain_from_beamwidths(double phi_H, double phi_V);

// Inverse of the above under phi_H == phi_V; defined for G >= 2.
double square_beamwidth_from_gain(double gain);

// Square-beam pattern for a linear gain (the configuration-file path).
AntennaPattern pattern_from_gain(double gain);

// Channel prefactor P_T G_A G_U c^2 / (4 pi f)^2, W*m^2.
double rho(const SystemParams& params);

// rho * d(x)^-2 * exp(-K d(x)) with d(x) = sqrt((h_A-h_U)^2 + x^2), W.
double received_power(const SystemParams& params, double x);

// Elevation of the AP seen from the UE at ground distance x; pi/2 at x = 0.
double elevation_angle(const SystemParams& params, double x);

LinkGeometry link_geometry(const SystemParams& params, double x, double theta);

// Largest 2D distance at which the unblocked SNR still reaches tau.
// Throws infeasible_geometry when no distance qualifies (negative radicand);
// a radicand of exactly zero returns 0.
double max_association_radius(const SystemParams& params);

// Reference parameter set used throughout the tests and as the configuration
// defaults: 3 m APs, 1 m UEs, 1.5 m blockers of radius 0.3 m, 1.07 THz,
// K = 0.192 /m, 20 dBm transmit power, -74.4 dBm noise, 17.5/12.5 dBi square
// beams, lambda_A = 0.1, lambda_B = 0.2, tau = 3 dB.
SystemParams default_params();

}  // namespace terascope

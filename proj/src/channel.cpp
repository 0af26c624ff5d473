#include "terascope/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "terascope/numerics.hpp"

namespace terascope {

namespace {

constexpr double kPi = std::numbers::pi;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

void check(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("SystemParams: " + what);
}

}  // namespace

void validate(const SystemParams& p) {
  check(p.h_A > p.h_U, "requires h_A > h_U");
  check(p.h_B > p.h_U && p.h_B < p.h_A, "requires h_U < h_B < h_A");
  check(p.r_B > 0.0, "requires r_B > 0");
  check(p.f > 0.0, "requires f > 0");
  check(p.K >= 0.0, "requires K >= 0");
  check(p.P_T > 0.0, "requires P_T > 0");
  check(p.sigma2 > 0.0, "requires sigma2 > 0");
  check(p.lambda_A > 0.0, "requires lambda_A > 0");
  check(p.lambda_B >= 0.0, "requires lambda_B >= 0");
  check(p.tau > 0.0, "requires tau > 0");
  for (const AntennaPattern* pat : {&p.ap_pattern, &p.ue_pattern}) {
    check(pat->phi_H > 0.0 && pat->phi_H < kPi, "beamwidths must lie in (0, pi)");
    check(pat->phi_V > 0.0 && pat->phi_V < kPi, "beamwidths must lie in (0, pi)");
    const double t = std::tan(pat->phi_H / 2.0) * std::tan(pat->phi_V / 2.0);
    check(t <= 1.0, "beamwidth product exceeds the gain relation's domain");
    const double want = gain_from_beamwidths(pat->phi_H, pat->phi_V);
    check(std::abs(pat->gain - want) <= 1e-9 * want,
          "gain is inconsistent with the beamwidths");
  }
}

double gain_from_beamwidths(double phi_H, double phi_V) {
  if (!(phi_H > 0.0) || !(phi_V > 0.0) || phi_H >= kPi || phi_V >= kPi) {
    throw std::domain_error("gain_from_beamwidths: beamwidths must lie in (0, pi)");
  }
  const double t = std::tan(phi_H / 2.0) * std::tan(phi_V / 2.0);
  if (t > 1.0) {
    throw std::domain_error(
        "gain_from_beamwidths: tan(phi_H/2)*tan(phi_V/2) must not exceed 1");
  }
  return kPi / std::asin(t);
}

double square_beamwidth_from_gain(double gain) {
  if (!(gain >= 2.0)) {
    throw std::domain_error("square_beamwidth_from_gain: gain must be >= 2");
  }
  return 2.0 * std::atan(std::sqrt(std::sin(kPi / gain)));
}

AntennaPattern pattern_from_gain(double gain) {
  const double phi = square_beamwidth_from_gain(gain);
  return AntennaPattern{phi, phi, gain};
}

double rho(const SystemParams& p) {
  const double denom = 4.0 * kPi * p.f / kSpeedOfLight;
  return p.P_T * p.ap_pattern.gain * p.ue_pattern.gain / (denom * denom);
}

double received_power(const SystemParams& p, double x) {
  const double h = p.height_gap();
  const double d2 = h * h + x * x;
  return rho(p) / d2 * std::exp(-p.K * std::sqrt(d2));
}

double elevation_angle(const SystemParams& p, double x) {
  return std::atan2(p.height_gap(), x);
}

LinkGeometry link_geometry(const SystemParams& p, double x, double theta) {
  const double h = p.height_gap();
  return LinkGeometry{x, std::sqrt(h * h + x * x), theta,
                      std::atan2(h, x)};
}

double max_association_radius(const SystemParams& p) {
  const double h = p.height_gap();
  // Solve rho d^-2 exp(-K d) = tau sigma2 for d, then convert to the ground
  // distance. K = 0 degenerates to a plain inverse-square threshold.
  double d;
  if (p.K == 0.0) {
    d = std::sqrt(rho(p) / (p.tau * p.sigma2));
  } else {
    const double arg = 0.5 * p.K * std::sqrt(rho(p) / (p.tau * p.sigma2));
    d = 2.0 / p.K * lambert_w0(arg);
  }
  const double radicand = d * d - h * h;
  if (radicand < 0.0) {
    throw infeasible_geometry(
        "max_association_radius: SNR threshold unreachable at any distance "
        "(connection distance " + std::to_string(d) +
        " m is below the AP-UE height gap " + std::to_string(h) + " m)");
  }
  return std::sqrt(radicand);
}

SystemParams default_params() {
  SystemParams p;
  p.h_A = 3.0;
  p.h_U = 1.0;
  p.h_B = 1.5;
  p.r_B = 0.3;
  p.f = 1.07e12;
  p.K = 0.192;
  p.P_T = dbm_to_watts(20.0);
  p.sigma2 = dbm_to_watts(-74.4);
  p.ap_pattern = pattern_from_gain(db_to_linear(17.5));
  p.ue_pattern = pattern_from_gain(db_to_linear(12.5));
  p.lambda_A = 0.1;
  p.lambda_B = 0.2;
  p.tau = db_to_linear(3.0);
  return p;
}

}  // namespace terascope

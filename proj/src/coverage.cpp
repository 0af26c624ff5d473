#include "terascope/coverage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "terascope/numerics.hpp"

namespace terascope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double cot(double a) { return std::cos(a) / std::sin(a); }

}  // namespace

DerivedParams derive_params(const SystemParams& p) {
  DerivedParams d;
  d.h = p.height_gap();
  d.rho = rho(p);
  d.r_t = max_association_radius(p);
  d.beta_bar = std::atan2(d.h, d.r_t);
  const BlockageConstants bc = blockage_constants(p);
  d.zeta = bc.zeta;
  d.eta = bc.eta;
  const double half_v = p.ap_pattern.phi_V / 2.0;
  // x_mu: lower window edge reaches beta_bar; x_nu: upper edge drops below it.
  const double lo_edge = d.beta_bar + half_v;
  d.x_mu = lo_edge < kHalfPi ? d.h / std::tan(lo_edge) : 0.0;
  const double hi_edge = d.beta_bar - half_v;
  d.x_nu = hi_edge > 0.0 ? d.h / std::tan(hi_edge) : kInf;
  return d;
}

VerticalWindow vertical_window(const SystemParams& p, double x0) {
  return vertical_window(p, derive_params(p), x0);
}

VerticalWindow vertical_window(const SystemParams& p,
                               const DerivedParams& derived, double x0) {
  const double h = derived.h;
  const double t = std::tan(p.ue_pattern.phi_V / 2.0);
  VerticalWindow w;
  const double lo_num = x0 - h * t;  // tan shift of the upper beam edge
  w.r_min = lo_num > 0.0 ? h * lo_num / (h + x0 * t) : 0.0;
  const double hi_den = h - x0 * t;  // positive iff the lower edge clears horizontal
  w.r_max = hi_den > 0.0 ? h * (x0 + h * t) / hi_den : kInf;
  return w;
}

double p_hit_horizontal(const SystemParams& p) {
  return p.ap_pattern.phi_H / (2.0 * kPi);
}

double p_hit_vertical(const SystemParams& p, double x) {
  return p_hit_vertical(p, derive_params(p), x);
}

double p_hit_vertical(const SystemParams& p, const DerivedParams& derived,
                      double x) {
  const double psi = std::atan2(derived.h, x);
  const double half_v = p.ap_pattern.phi_V / 2.0;
  const double lo = std::clamp(psi - half_v, derived.beta_bar, kHalfPi);
  const double hi = std::clamp(psi + half_v, derived.beta_bar, kHalfPi);
  if (hi <= lo) return 0.0;
  const double scale = derived.h * derived.h / (derived.r_t * derived.r_t);
  const double cl = cot(lo);
  const double ch = cot(hi);
  return std::clamp(scale * (cl * cl - ch * ch), 0.0, 1.0);
}

double interferer_activity_probability(const SystemParams& p, double x) {
  const DerivedParams derived = derive_params(p);
  return p_hit_horizontal(p) * p_hit_vertical(p, derived, x) *
         derived.zeta * std::exp(-derived.eta * x);
}

DominantRadius dominant_radius(const SystemParams& p, double x0) {
  return dominant_radius(p, derive_params(p), x0);
}

DominantRadius dominant_radius(const SystemParams& p,
                               const DerivedParams& derived, double x0) {
  const double pr0 = received_power(p, x0);
  const double floor = p.tau * p.sigma2;
  if (pr0 <= floor) return {DominantRadius::Kind::snr_infeasible, 0.0};
  // Largest 3D distance at which a single interferer still pushes the SINR
  // below tau: received_power(d) = pr0 / tau - sigma2.
  const double budget = pr0 / p.tau - p.sigma2;
  double d3;
  if (p.K == 0.0) {
    d3 = std::sqrt(derived.rho / budget);
  } else {
    d3 = 2.0 / p.K * lambert_w0(0.5 * p.K * std::sqrt(derived.rho / budget));
  }
  const double radicand = d3 * d3 - derived.h * derived.h;
  if (radicand <= 0.0) return {DominantRadius::Kind::none, 0.0};
  return {DominantRadius::Kind::radius, std::sqrt(radicand)};
}

double thinned_density(const SystemParams& p, double x0) {
  return thinned_density(p, derive_params(p), x0);
}

double thinned_density(const SystemParams& p, const DerivedParams& derived,
                       double x0) {
  if (p.lambda_A == 0.0) return 0.0;
  const DominantRadius d = dominant_radius(p, derived, x0);
  if (!d.is_radius()) return 0.0;
  const VerticalWindow w = vertical_window(p, derived, x0);
  const double hi = std::min(d.value, w.r_max);
  if (hi <= w.r_min) return 0.0;
  const auto integrand = [&](double x) {
    return p_hit_vertical(p, derived, x) * std::exp(-derived.eta * x) * x;
  };
  // The integrand has kinks where a window edge starts or stops clamping.
  const std::array<double, 3> kinks = {
      derived.x_mu, derived.x_nu, derived.h * std::tan(p.ap_pattern.phi_V / 2.0)};
  const double integral =
      integrate_adaptive_segmented(integrand, w.r_min, hi, kinks);
  return p.lambda_A * derived.zeta * p.ap_pattern.phi_H * p.ue_pattern.phi_H /
         (2.0 * kPi) * integral;
}

CoverageResult coverage(const SystemParams& p, double x0) {
  return coverage(p, derive_params(p), x0);
}

CoverageResult coverage(const SystemParams& p, const DerivedParams& derived,
                        double x0) {
  CoverageResult r;
  r.p_L = derived.zeta * std::exp(-derived.eta * x0);
  r.out_of_association = x0 > derived.r_t;
  const DominantRadius d = dominant_radius(p, derived, x0);
  if (d.kind == DominantRadius::Kind::snr_infeasible) {
    r.snr_feasible = false;
    r.Lambda = kInf;
    r.Omega = kInf;
    r.p_cL = 0.0;
    r.p_c = 0.0;
    return r;
  }
  if (d.is_radius()) r.D = d.value;
  r.Lambda = thinned_density(p, derived, x0);
  r.p_cL = std::exp(-r.Lambda);
  r.p_c = r.p_L * r.p_cL;
  r.Omega = r.Lambda + derived.eta * x0 + 2.0 * p.lambda_B * p.r_B * p.r_B;
  return r;
}

double beta_pdf(const SystemParams& p, double beta) {
  return beta_pdf(p, derive_params(p), beta);
}

double beta_pdf(const SystemParams& /*p*/, const DerivedParams& derived,
                double beta) {
  if (beta < derived.beta_bar || beta > kHalfPi) return 0.0;
  const double s = std::sin(beta);
  const double scale = 2.0 * derived.h * derived.h / (derived.r_t * derived.r_t);
  return scale * std::cos(beta) / (s * s * s);
}

double p_hit_vertical_by_quadrature(const SystemParams& p, double x) {
  return p_hit_vertical_by_quadrature(p, derive_params(p), x);
}

double p_hit_vertical_by_quadrature(const SystemParams& p,
                                    const DerivedParams& derived, double x) {
  const double psi = std::atan2(derived.h, x);
  const double half_v = p.ap_pattern.phi_V / 2.0;
  const double lo = std::max(psi - half_v, derived.beta_bar);
  const double hi = std::min(psi + half_v, kHalfPi);
  if (hi <= lo) return 0.0;
  const auto f = [&](double b) { return beta_pdf(p, derived, b); };
  return integrate_adaptive(f, lo, hi, 1e-9, 1e-16);
}

}  // namespace terascope

#include "terascope/blockage.hpp"

#include <cmath>

namespace terascope {

BlockageConstants blockage_constants(const SystemParams& p) {
  BlockageConstants c;
  c.zeta = std::exp(-2.0 * p.lambda_B * p.r_B * p.r_B);
  c.eta = 2.0 * p.lambda_B * p.r_B * (p.h_B - p.h_U) / (p.h_A - p.h_U);
  return c;
}

double blockage_zone_length(const SystemParams& p, double x,
                            double blocker_radius, double blocker_height) {
  return (blocker_height - p.h_U) / (p.h_A - p.h_U) * x + blocker_radius;
}

double los_probability(const SystemParams& p, double x) {
  const BlockageConstants c = blockage_constants(p);
  return c.zeta * std::exp(-c.eta * x);
}

bool is_link_blocked(const SystemParams& p, const Vec2& ap,
                     const Blocker& blocker) {
  const double x = std::hypot(ap.x, ap.y);
  // A vertical link still has a body-radius-long zone; its direction is
  // immaterial for an isotropic blocker field, so use +x by convention.
  const double ux = x == 0.0 ? 1.0 : ap.x / x;
  const double uy = x == 0.0 ? 0.0 : ap.y / x;
  // Longitudinal/lateral coordinates of the blocker center along the link.
  const double lon = blocker.center.x * ux + blocker.center.y * uy;
  const double lat = -blocker.center.x * uy + blocker.center.y * ux;
  const double len = blockage_zone_length(p, x, blocker.radius, blocker.height);
  return lon >= 0.0 && lon <= len && std::abs(lat) <= blocker.radius;
}

}  // namespace terascope

#pragma once

#include "terascope/channel.hpp"

// Dynamic human blockage: blockers are cylinders dropped by a Poisson point
// process; a link is line-of-sight when no blocker center falls inside the
// rectangle between the UE and the point where the ray crosses blocker height.

namespace terascope {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

struct Blocker {
  Vec2 center;
  double radius = 0.0;  // > 0
  double height = 0.0;  // within (h_U, h_A)
};

// LoS probability parameters: p_L(x) = zeta * exp(-eta * x).
struct BlockageConstants {
  double zeta = 1.0;  // self-blockage factor exp(-2 lambda_B r_B^2)
  double eta = 0.0;   // decay rate 2 lambda_B r_B (h_B - h_U) / (h_A - h_U)
};

BlockageConstants blockage_constants(const SystemParams& params);

// Ground length of the segment along which a blocker of the given height can
// cut the ray, extended by the blocker radius:
//   (height - h_U) / (h_A - h_U) * x + radius.
double blockage_zone_length(const SystemParams& params, double x,
                            double blocker_radius, double blocker_height);

double los_probability(const SystemParams& params, double x);

// Exact geometric test: does this blocker's center lie inside the blockage
// rectangle of the link from a UE at the origin to an AP at `ap` (2D ground
// coordinates)? The rectangle is anchored at the UE, aligned with the link,
// of length blockage_zone_length and half-width equal to the blocker radius.
bool is_link_blocked(const SystemParams& params, const Vec2& ap,
                     const Blocker& blocker);

}  // namespace terascope

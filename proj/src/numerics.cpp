#include "terascope/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace terascope {

double lambert_w0(double z) {
  if (z < 0.0) {
    throw std::domain_error("lambert_w0: argument must be nonnegative");
  }
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return std::numeric_limits<double>::infinity();

  double w;
  if (z > std::exp(1.0)) {
    // Asymptotic expansion W ~ ln z - ln ln z + ln ln z / ln z.
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  } else if (z < 0.5) {
    // Leading terms of the Taylor series about 0.
    w = z * (1.0 - z * (1.0 - 1.5 * z));
  } else {
    w = std::log1p(z);
  }

  // Halley iteration: cubic convergence, a handful of steps from any of the
  // seeds above on the principal branch.
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double fv = w * ew - z;
    const double denom = ew * (w + 1.0) - (w + 2.0) * fv / (2.0 * (w + 1.0));
    const double step = fv / denom;
    w -= step;
    if (std::fabs(step) <= 1e-14 * std::max(std::fabs(w), 1e-290)) break;
  }
  return w;
}

}  // namespace terascope

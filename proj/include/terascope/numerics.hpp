#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace terascope {

// Principal-branch Lambert W on [0, inf): returns w >= 0 with w*e^w = z to
// better than 1e-12 relative. Halley iteration, seeded by the asymptotic log
// expansion for z > e and a series for smaller arguments.
double lambert_w0(double z);

namespace detail {

inline double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace detail

// Adaptive Simpson quadrature with an explicit interval stack. `rel_tol`
// applies to the whole-interval estimate; `abs_floor` stops refinement of
// negligible contributions. The error test is the classic 15x Richardson
// comparison between one and two Simpson panels.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-8,
                          double abs_floor = 1e-14) {
  if (!(a < b)) return 0.0;

  struct Interval {
    double a, b, fa, fm, fb, whole, eps;
  };

  const double fa0 = f(a);
  const double m0 = 0.5 * (a + b);
  const double fm0 = f(m0);
  const double fb0 = f(b);
  const double whole0 = detail::simpson(a, fa0, fm0, b, fb0);
  const double eps0 = std::max(abs_floor, rel_tol * std::fabs(whole0));
  const double min_width = (b - a) * 1e-13;

  std::vector<Interval> stack;
  stack.push_back({a, b, fa0, fm0, fb0, whole0, eps0});

  double total = 0.0;
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();

    const double m = 0.5 * (iv.a + iv.b);
    const double lm = 0.5 * (iv.a + m);
    const double rm = 0.5 * (m + iv.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = detail::simpson(iv.a, iv.fa, flm, m, iv.fm);
    const double right = detail::simpson(m, iv.fm, frm, iv.b, iv.fb);
    const double delta = left + right - iv.whole;

    if (std::fabs(delta) <= 15.0 * iv.eps || (iv.b - iv.a) < min_width) {
      total += left + right + delta / 15.0;
    } else {
      const double half_eps = 0.5 * iv.eps;
      stack.push_back({iv.a, m, iv.fa, flm, iv.fm, left, half_eps});
      stack.push_back({m, iv.b, iv.fm, frm, iv.fb, right, half_eps});
    }
  }
  return total;
}

// Same quadrature but with mandatory subdivision at interior breakpoints
// (integrand kinks); `points` must be sorted ascending and bracket nothing
// outside [a, b] — out-of-range entries are ignored.
template <typename F>
double integrate_adaptive_segmented(F&& f, double a, double b,
                                    std::span<const double> points,
                                    double rel_tol = 1e-8,
                                    double abs_floor = 1e-14) {
  if (!(a < b)) return 0.0;
  double total = 0.0;
  double lo = a;
  for (double p : points) {
    if (p <= lo || p >= b) continue;
    total += integrate_adaptive(f, lo, p, rel_tol, abs_floor);
    lo = p;
  }
  total += integrate_adaptive(f, lo, b, rel_tol, abs_floor);
  return total;
}

}  // namespace terascope

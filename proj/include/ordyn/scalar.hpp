#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "ordyn/errors.hpp"

namespace ordyn {

// One-dimensional search primitives used by the norm and conjugate engines.
// All of them assume exact unimodality / monotonicity of the callable; the
// callers guarantee it through convexity of the underlying functionals.

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
  double width = 0.0;  // final bracket width
};

// Golden-section minimization of a unimodal f on [lo, hi].
// Terminates when the bracket is below tol_abs + tol_rel * |midpoint|.
template <class F>
ScalarMin golden_min(F&& f, double lo, double hi, double tol_abs = 1e-10,
                     double tol_rel = 1e-12, int max_iter = 400) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= tol_abs + tol_rel * std::fabs(mid)) break;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  ScalarMin r;
  r.width = b - a;
  if (f1 <= f2) {
    r.x = x1;
    r.value = f1;
  } else {
    r.x = x2;
    r.value = f2;
  }
  return r;
}

// Bisection on a nondecreasing f for the crossing f(x) = target.
// Requires f(lo) <= target <= f(hi).  Returns the midpoint of the final
// bracket; the bracket width shrinks below tol_abs.
template <class F>
double bisect_nondecreasing(F&& f, double lo, double hi, double target,
                            double tol_abs = 1e-12, int max_iter = 400) {
  for (int it = 0; it < max_iter && hi - lo > tol_abs; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // float exhaustion
    if (f(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Locates a bracket [a, c] around the minimizer of a convex f on (0, inf)
// by walking a dyadic grid from x0 in the descending direction.
// Returns {a, c}.  If f keeps decreasing down to x_floor the bracket is
// clamped there (convex functions with an infimum at 0+ are legal callers).
template <class F>
std::pair<double, double> bracket_min_positive(F&& f, double x0,
                                               double x_floor = 1e-300,
                                               double x_ceil = 1e300) {
  double xm = x0, fm = f(x0);
  double xl = x0 * 0.5, fl = f(xl);
  double xr = x0 * 2.0, fr = f(xr);
  if (fm <= fl && fm <= fr) return {xl, xr};
  if (fl < fm) {
    // walk left
    while (xl * 0.5 >= x_floor) {
      xr = xm;
      xm = xl;
      fm = fl;
      xl *= 0.5;
      fl = f(xl);
      if (fl >= fm) return {xl, xr};
    }
    return {x_floor, xm};
  }
  // walk right
  while (xr * 2.0 <= x_ceil) {
    xl = xm;
    xm = xr;
    fm = fr;
    xr *= 2.0;
    fr = f(xr);
    if (fr >= fm) return {xl, xr};
  }
  return {xm, x_ceil};
}

}  // namespace ordyn

#pragma once

// Adaptive Simpson quadrature with Richardson correction.

#include <cmath>
#include <span>
#include <utility>

namespace viscomp {

namespace detail {

template <class F>
double simpson_ad(const F& f, double a, double c, double b, double fa, double fc,
                  double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + c), rm = 0.5 * (c + b);
  const double flm = f(lm), frm = f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fc);
  const double right = (h / 12.0) * (fc + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
  return simpson_ad(f, a, lm, c, fa, flm, fc, left, 0.5 * tol, depth - 1) +
         simpson_ad(f, c, rm, b, fc, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-9) {
  if (a == b) return 0.0;
  const double c = 0.5 * (a + b);
  const double fa = f(a), fc = f(c), fb = f(b);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fc + fb);
  return detail::simpson_ad(f, a, c, b, fa, fc, fb, whole, abs_tol, 40);
}

/// Integrate over [a, b] splitting at the interior breakpoints (sorted,
/// those outside (a, b) are ignored). Useful for piecewise-smooth integrands.
template <class F>
double integrate_split(const F& f, double a, double b, std::span<const double> breakpoints,
                       double abs_tol = 1e-9) {
  double total = 0.0;
  double lo = a;
  for (double bp : breakpoints) {
    if (bp <= lo || bp >= b) continue;
    total += integrate(f, lo, bp, abs_tol);
    lo = bp;
  }
  total += integrate(f, lo, b, abs_tol);
  return total;
}

}  // namespace viscomp

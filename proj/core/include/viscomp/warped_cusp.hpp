#pragma once

// Warped-product cusp metrics h^2(t) ds^2 + dt^2 on T^{n-1} x [0,inf):
// the flattening warp function (exp(-t) for t <= 1, 1/t^2 for t >= 3, a
// verified spline bridge in between), sectional curvature of the warped
// metric, curvature ranges, the visibility integral, and cusp volumes.
//
// Everything is a pure function over immutable values.

#include <utility>

namespace viscomp {

struct WarpValue {
  double h;
  double dh;
  double d2h;
};

namespace detail {
/// Warp evaluation at scalar type Real (long double instantiation exists for
/// high-precision finite-difference oracles in tests).
template <class Real>
struct WarpValueT {
  Real h, dh, d2h;
};
template <class Real>
WarpValueT<Real> warp_eval(Real t);
}  // namespace detail

/// The flattening warp function. The bridge on (1,3) is a fixed, precomputed
/// C^1 spline for phi = -h'/h (see tools/fit_bridge.py); construction
/// verifies on a dense grid that h > 0, h' < 0, h''/h > 0, the seams are C^2
/// within 1e-8, and the bridge curvature window stays inside [-11, -0.04],
/// and throws std::logic_error otherwise.
class WarpFunction {
 public:
  explicit WarpFunction(int grid_resolution = 10000);

  /// (h, h', h''); throws std::domain_error for t < 0.
  WarpValue eval(double t) const;

  double log_derivative(double t) const;   // phi(t) = -h'(t)/h(t)
  double curvature_ratio(double t) const;  // g(t) = h''(t)/h(t)

  int grid_resolution() const { return grid_resolution_; }

 private:
  int grid_resolution_;
};

/// Tangent 2-plane through the radial direction at cusp coordinate t, with
/// base-direction component Y in [-1, 1] of the second basis vector.
struct TangentPlaneSpec {
  double t;
  double Y;
  TangentPlaneSpec(double t_, double Y_);
};

struct CuspModel {
  int n = 2;                  // dimension, >= 2
  double torus_volume = 1.0;  // flat volume of the T^{n-1} cross-section
  WarpFunction warp{};
  CuspModel() = default;
  CuspModel(int n_, double torus_volume_, WarpFunction warp_ = WarpFunction());
};

/// K(Pi) = -(h''/h) Y^2 - (h'/h)^2 (1 - Y^2); strictly negative everywhere.
double sectional_curvature(const CuspModel& m, const TangentPlaneSpec& p);

/// Extremes of the sectional curvature over Y in [-1, 1] at fixed t:
/// [-max(h''/h, (h'/h)^2), -min(h''/h, (h'/h)^2)].
std::pair<double, double> curvature_range(const CuspModel& m, double t);

/// int_1^T k(t) t dt with k = min(h''/h, (h'/h)^2), by adaptive quadrature;
/// bounded below by 0.04 ln T. Throws std::domain_error for T < 1.
double visibility_integral(const CuspModel& m, double T);

enum class VolumeIntegrand {
  warped_form,  // h^{n-1}, the warped-product volume form
  linear_warp,  // literal h, regardless of dimension
};

/// torus_volume * int_{t0}^inf h(t)^e dt, closed form on [max(t0,3), inf)
/// plus quadrature on [t0, 3) when t0 < 3. Throws for t0 < 0.
double cusp_volume(const CuspModel& m, double t0,
                   VolumeIntegrand integrand = VolumeIntegrand::warped_form);

}  // namespace viscomp

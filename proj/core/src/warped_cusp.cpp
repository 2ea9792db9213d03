#include "viscomp/warped_cusp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "viscomp/quadrature.hpp"

namespace viscomp {

namespace {

// Bridge spline for phi = -h'/h on [1,3]: C^1 piecewise-cubic Hermite data
// produced by tools/fit_bridge.py. The knot values/slopes satisfy exactly
// phi(1) = 1, phi'(1) = 0, phi(3) = 2/3, phi'(3) = -2/9 and
// int_1^3 phi = 2 ln 3 - 1, which makes h, h', h'' continuous at both seams.
constexpr int kKnots = 9;
constexpr double kBridgeKnots[kKnots] = {1.0,  1.25, 1.5, 1.75, 2.0,
                                         2.25, 2.5,  2.75, 3.0};
constexpr double kBridgePhi[kKnots] = {
    1.0,
    0.56412663295164533,
    0.6399444212669706,
    0.6323915831168514,
    0.45033924584442619,
    0.49371952252271339,
    0.5490512964774551,
    0.62136264420185372,
    0.66666666666666663};
constexpr double kBridgeSlope[kKnots] = {
    0.0,
    0.26812000669461589,
    0.35765787782011499,
    0.34821490031480651,
    0.15443417730367048,
    0.19459583852528142,
    0.25151365998858927,
    0.33070797695994486,
    -0.22222222222222221};

// cumulative int_1^{x_i} phi, filled once
struct BridgeTable {
  std::array<double, kKnots> cum{};
  BridgeTable() {
    cum[0] = 0.0;
    for (int s = 0; s + 1 < kKnots; ++s) {
      const double L = kBridgeKnots[s + 1] - kBridgeKnots[s];
      cum[s + 1] = cum[s] + L / 2.0 * (kBridgePhi[s] + kBridgePhi[s + 1]) +
                   L * L / 12.0 * (kBridgeSlope[s] - kBridgeSlope[s + 1]);
    }
  }
};
const BridgeTable kBridge{};

template <class Real>
struct BridgeEval {
  Real phi, dphi, integral;  // integral = int_1^t phi
};

template <class Real>
BridgeEval<Real> bridge_eval(Real t) {
  int s = 0;
  while (s + 2 < kKnots && t >= Real(kBridgeKnots[s + 1])) ++s;
  const Real L = Real(kBridgeKnots[s + 1]) - Real(kBridgeKnots[s]);
  const Real u = (t - Real(kBridgeKnots[s])) / L;
  const Real p0 = Real(kBridgePhi[s]), p1 = Real(kBridgePhi[s + 1]);
  const Real m0 = Real(kBridgeSlope[s]) * L, m1 = Real(kBridgeSlope[s + 1]) * L;
  const Real u2 = u * u, u3 = u2 * u;
  const Real h00 = 2 * u3 - 3 * u2 + 1;
  const Real h10 = u3 - 2 * u2 + u;
  const Real h01 = -2 * u3 + 3 * u2;
  const Real h11 = u3 - u2;
  const Real phi = p0 * h00 + m0 * h10 + p1 * h01 + m1 * h11;
  const Real d00 = (6 * u2 - 6 * u) / L;
  const Real d10 = (3 * u2 - 4 * u + 1) / L;
  const Real d01 = (-6 * u2 + 6 * u) / L;
  const Real d11 = (3 * u2 - 2 * u) / L;
  const Real dphi = p0 * d00 + m0 * d10 + p1 * d01 + m1 * d11;
  // antiderivatives of the basis at u
  const Real u4 = u3 * u;
  const Real i00 = u4 / 2 - u3 + u;
  const Real i10 = u4 / 4 - 2 * u3 / 3 + u2 / 2;
  const Real i01 = -u4 / 2 + u3;
  const Real i11 = u4 / 4 - u3 / 3;
  const Real part = L * (p0 * i00 + m0 * i10 + p1 * i01 + m1 * i11);
  return {phi, dphi, Real(kBridge.cum[s]) + part};
}

}  // namespace

namespace detail {

template <class Real>
WarpValueT<Real> warp_eval(Real t) {
  if (t < Real(0)) throw std::domain_error("warp: t must be nonnegative");
  if (t <= Real(1)) {
    const Real h = std::exp(-t);
    return {h, -h, h};
  }
  if (t < Real(3)) {
    const BridgeEval<Real> b = bridge_eval(t);
    const Real h = std::exp(Real(-1) - b.integral);
    const Real dh = -b.phi * h;
    const Real d2h = (b.phi * b.phi - b.dphi) * h;
    return {h, dh, d2h};
  }
  const Real t2 = t * t;
  return {Real(1) / t2, Real(-2) / (t2 * t), Real(6) / (t2 * t2)};
}

template WarpValueT<double> warp_eval<double>(double);
template WarpValueT<long double> warp_eval<long double>(long double);

}  // namespace detail

WarpFunction::WarpFunction(int grid_resolution) : grid_resolution_(grid_resolution) {
  if (grid_resolution_ < 2) throw std::invalid_argument("WarpFunction: grid resolution must be >= 2");

  // seam continuity within 1e-8
  for (double seam : {1.0, 3.0}) {
    const auto lo = detail::warp_eval<double>(seam - 1e-13);
    const auto hi = detail::warp_eval<double>(seam + 1e-13);
    if (std::abs(lo.h - hi.h) > 1e-8 || std::abs(lo.dh - hi.dh) > 1e-8 ||
        std::abs(lo.d2h - hi.d2h) > 1e-8)
      throw std::logic_error("WarpFunction: bridge is not C^2 at the seams");
  }

  // h > 0, h' < 0, h''/h > 0 over [0, 100]; curvature window on the bridge
  for (int i = 0; i <= grid_resolution_; ++i) {
    const double t = 100.0 * i / grid_resolution_;
    const auto v = detail::warp_eval<double>(t);
    if (!(v.h > 0.0) || !(v.dh < 0.0) || !(v.d2h / v.h > 0.0))
      throw std::logic_error("WarpFunction: positivity/monotonicity check failed");
  }
  for (int i = 0; i <= grid_resolution_; ++i) {
    const double t = 1.0 + 2.0 * i / grid_resolution_;
    const auto v = detail::warp_eval<double>(t);
    const double g = v.d2h / v.h;
    const double q = (v.dh / v.h) * (v.dh / v.h);
    if (std::max(g, q) > 11.0 || std::min(g, q) < 0.04)
      throw std::logic_error("WarpFunction: bridge violates the curvature window [-11, -0.04]");
  }
}

WarpValue WarpFunction::eval(double t) const {
  const auto v = detail::warp_eval<double>(t);
  return {v.h, v.dh, v.d2h};
}

double WarpFunction::log_derivative(double t) const {
  const auto v = detail::warp_eval<double>(t);
  return -v.dh / v.h;
}

double WarpFunction::curvature_ratio(double t) const {
  const auto v = detail::warp_eval<double>(t);
  return v.d2h / v.h;
}

TangentPlaneSpec::TangentPlaneSpec(double t_, double Y_) : t(t_), Y(Y_) {
  if (!(std::abs(Y) <= 1.0)) throw std::invalid_argument("TangentPlaneSpec: |Y| must be <= 1");
  if (t < 0.0) throw std::domain_error("TangentPlaneSpec: t must be nonnegative");
}

CuspModel::CuspModel(int n_, double torus_volume_, WarpFunction warp_)
    : n(n_), torus_volume(torus_volume_), warp(warp_) {
  if (n < 2) throw std::invalid_argument("CuspModel: dimension must be >= 2");
  if (!(torus_volume > 0.0)) throw std::invalid_argument("CuspModel: torus volume must be positive");
}

double sectional_curvature(const CuspModel& m, const TangentPlaneSpec& p) {
  const WarpValue v = m.warp.eval(p.t);
  const double g = v.d2h / v.h;
  const double q = (v.dh / v.h) * (v.dh / v.h);
  // -q - (g - q) Y^2 is exactly -1 when g = q = 1 (the hyperbolic tail)
  return -q - (g - q) * p.Y * p.Y;
}

std::pair<double, double> curvature_range(const CuspModel& m, double t) {
  const WarpValue v = m.warp.eval(t);
  const double g = v.d2h / v.h;
  const double q = (v.dh / v.h) * (v.dh / v.h);
  return {-std::max(g, q), -std::min(g, q)};
}

double visibility_integral(const CuspModel& m, double T) {
  if (T < 1.0) throw std::domain_error("visibility_integral: T must be >= 1");
  if (T == 1.0) return 0.0;
  const auto integrand = [&m](double t) {
    const WarpValue v = m.warp.eval(t);
    const double g = v.d2h / v.h;
    const double q = (v.dh / v.h) * (v.dh / v.h);
    return std::min(g, q) * t;
  };
  // split at the bridge knots and the tail seam; the min() kink is mild
  std::array<double, kKnots + 1> breaks{};
  for (int i = 0; i < kKnots; ++i) breaks[i] = kBridgeKnots[i];
  breaks[kKnots] = 3.0;
  return integrate_split(integrand, 1.0, T, breaks, 1e-9);
}

double cusp_volume(const CuspModel& m, double t0, VolumeIntegrand integrand) {
  if (t0 < 0.0) throw std::domain_error("cusp_volume: t0 must be nonnegative");
  const int e = integrand == VolumeIntegrand::warped_form ? m.n - 1 : 1;
  // tail: int_s^inf t^{-2e} dt = s^{1-2e} / (2e - 1)
  const double s = std::max(t0, 3.0);
  double total = std::pow(s, 1 - 2 * e) / (2 * e - 1);
  if (t0 < 3.0) {
    std::array<double, kKnots> breaks{};
    for (int i = 0; i < kKnots; ++i) breaks[i] = kBridgeKnots[i];
    total += integrate_split(
        [&](double t) { return std::pow(m.warp.eval(t).h, e); }, t0, 3.0, breaks, 1e-12);
  }
  return m.torus_volume * total;
}

}  // namespace viscomp

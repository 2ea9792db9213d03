#include "viscomp/packing.hpp"

#include <cmath>
#include <stdexcept>

#include "viscomp/quadrature.hpp"

namespace viscomp {

namespace {
// surface area of the unit (n-1)-sphere in R^n
double unit_sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}
}  // namespace

double euclidean_ball_volume(int n, double r) {
  if (n < 1 || !(r > 0.0)) throw std::invalid_argument("euclidean_ball_volume: need n >= 1, r > 0");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(r, n);
}

double hyperbolic_ball_volume(int n, double r) {
  if (n < 2 || !(r > 0.0)) throw std::invalid_argument("hyperbolic_ball_volume: need n >= 2, r > 0");
  switch (n) {
    case 2:
      return 2.0 * M_PI * (std::cosh(r) - 1.0);
    case 3:
      return 2.0 * M_PI * (std::sinh(r) * std::cosh(r) - r);
    case 4: {
      const double ch = std::cosh(r);
      return 2.0 * M_PI * M_PI * (ch * ch * ch / 3.0 - ch + 2.0 / 3.0);
    }
    default:
      return unit_sphere_area(n) *
             integrate([n](double s) { return std::pow(std::sinh(s), n - 1); }, 0.0, r, 1e-12);
  }
}

long long packing_bound(int n, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("packing_bound: radii must be positive");
  if (a > 2.0 * b) throw std::invalid_argument("packing_bound: need a <= 2b");
  const double ratio = hyperbolic_ball_volume(n, b + 0.5 * a) / hyperbolic_ball_volume(n, 0.5 * a);
  const double bound = std::ceil(ratio);
  if (!(bound < 9.0e18)) throw std::overflow_error("packing_bound: bound exceeds integer range");
  return static_cast<long long>(bound);
}

}  // namespace viscomp

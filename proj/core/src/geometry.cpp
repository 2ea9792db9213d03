#include "viscomp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viscomp {

namespace {
constexpr double kDetTol = 1e-12;
constexpr double kTraceTol = 1e-10;

double stable_arccosh1p(double u) {
  // arccosh(1 + u) for u >= 0 without cancellation near u = 0
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}
}  // namespace

UhpPoint::UhpPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(y > 0.0)) throw std::invalid_argument("UhpPoint: y must be positive");
}

double distance(const UhpPoint& p, const UhpPoint& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double u = (dx * dx + dy * dy) / (2.0 * p.y * q.y);
  return stable_arccosh1p(u);
}

BoundaryPoint BoundaryPoint::infinity() { return BoundaryPoint(true, 0.0); }
BoundaryPoint BoundaryPoint::finite(double x) { return BoundaryPoint(false, x); }

double BoundaryPoint::value() const {
  if (infinite_) throw std::logic_error("BoundaryPoint: point at infinity has no finite value");
  return x_;
}

MoebiusIsometry::MoebiusIsometry() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

MoebiusIsometry::MoebiusIsometry(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
  const double det = a_ * d_ - b_ * c_;
  if (std::abs(det - 1.0) > kDetTol)
    throw std::invalid_argument("MoebiusIsometry: determinant must be 1 within 1e-12");
  const double s = std::sqrt(det);
  a_ /= s; b_ /= s; c_ /= s; d_ /= s;
  // canonical sign: a > 0, or a = 0 and b > 0 (up to fp noise in a)
  const bool flip = (a_ < -kDetTol) || (std::abs(a_) <= kDetTol && b_ < 0.0);
  if (flip) { a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_; }
}

MoebiusIsometry MoebiusIsometry::translation(double t) {
  return MoebiusIsometry(1.0, t, 0.0, 1.0);
}

MoebiusIsometry MoebiusIsometry::scaling(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("scaling: factor must be positive");
  const double r = std::sqrt(s);
  return MoebiusIsometry(r, 0.0, 0.0, 1.0 / r);
}

MoebiusIsometry MoebiusIsometry::rotation_about_i(double theta) {
  return MoebiusIsometry(std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta));
}

UhpPoint MoebiusIsometry::operator()(const UhpPoint& p) const {
  const double u = c_ * p.x + d_;
  const double den = u * u + c_ * c_ * p.y * p.y;
  const double nx = ((a_ * p.x + b_) * u + a_ * c_ * p.y * p.y) / den;
  const double ny = p.y / den;
  return UhpPoint(nx, ny);
}

BoundaryPoint MoebiusIsometry::operator()(const BoundaryPoint& z) const {
  if (z.is_infinite()) {
    if (c_ == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(a_ / c_);
  }
  const double den = c_ * z.value() + d_;
  if (den == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint::finite((a_ * z.value() + b_) / den);
}

MoebiusIsometry MoebiusIsometry::inverse() const {
  return MoebiusIsometry(d_, -b_, -c_, a_);
}

bool MoebiusIsometry::is_identity(double tol) const {
  return std::abs(a_ - 1.0) <= tol && std::abs(b_) <= tol &&
         std::abs(c_) <= tol && std::abs(d_ - 1.0) <= tol;
}

MoebiusIsometry operator*(const MoebiusIsometry& g, const MoebiusIsometry& h) {
  return MoebiusIsometry(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
                         g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_);
}

bool MoebiusIsometry::approx_equal(const MoebiusIsometry& other, double tol) const {
  return std::abs(a_ - other.a_) <= tol && std::abs(b_ - other.b_) <= tol &&
         std::abs(c_ - other.c_) <= tol && std::abs(d_ - other.d_) <= tol;
}

double displacement(const MoebiusIsometry& g, const UhpPoint& p) {
  return distance(p, g(p));
}

IsometryKind classify(const MoebiusIsometry& g) {
  if (g.is_identity(kTraceTol)) return IsometryKind::identity;
  const double t = std::abs(g.trace());
  if (std::abs(t - 2.0) <= kTraceTol) return IsometryKind::parabolic;
  return t > 2.0 ? IsometryKind::hyperbolic : IsometryKind::elliptic;
}

double translation_length(const MoebiusIsometry& g) {
  if (classify(g) != IsometryKind::hyperbolic)
    throw std::domain_error("translation_length: no axis (isometry is not hyperbolic)");
  const double t = std::abs(g.trace()) / 2.0;
  return 2.0 * std::acosh(t);
}

std::vector<BoundaryPoint> fixed_points(const MoebiusIsometry& g) {
  const IsometryKind kind = classify(g);
  if (kind == IsometryKind::identity || kind == IsometryKind::elliptic)
    throw std::domain_error("fixed_points: isometry has no boundary fixed points");

  const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (std::abs(c) <= 1e-14 * scale) {
    // upper triangular: infinity is fixed
    if (kind == IsometryKind::parabolic) return {BoundaryPoint::infinity()};
    return {BoundaryPoint::finite(b / (d - a)), BoundaryPoint::infinity()};
  }
  if (kind == IsometryKind::parabolic)
    return {BoundaryPoint::finite((a - d) / (2.0 * c))};
  const double tr = g.trace();
  const double disc = std::sqrt(tr * tr - 4.0);
  double z1 = (a - d - disc) / (2.0 * c);
  double z2 = (a - d + disc) / (2.0 * c);
  if (z1 > z2) std::swap(z1, z2);
  return {BoundaryPoint::finite(z1), BoundaryPoint::finite(z2)};
}

namespace {
MoebiusIsometry send_to_infinity(double center) {
  // z -> -1/(z - center), determinant 1
  return MoebiusIsometry(0.0, -1.0, 1.0, -center);
}
}  // namespace

double busemann(const BoundaryPoint& z, const UhpPoint& base, const UhpPoint& p) {
  if (z.is_infinite()) return std::log(base.y / p.y);
  const MoebiusIsometry g = send_to_infinity(z.value());
  return std::log(g(base).y / g(p).y);
}

bool horoball_contains(const Horoball& hb, const UhpPoint& p) {
  return busemann(hb.center, UhpPoint(0.0, 1.0), p) < hb.level;
}

GeodesicRay::GeodesicRay(const UhpPoint& base, const BoundaryPoint& endpoint)
    : base_(base),
      endpoint_(endpoint),
      to_inf_(endpoint.is_infinite() ? MoebiusIsometry() : send_to_infinity(endpoint.value())),
      from_inf_(to_inf_.inverse()) {
  const UhpPoint img = to_inf_(base_);
  x0_ = img.x;
  y0_ = img.y;
}

UhpPoint GeodesicRay::at(double t) const {
  return from_inf_(UhpPoint(x0_, y0_ * std::exp(t)));
}

double distance_to_geodesic(const UhpPoint& p, const BoundaryPoint& e1, const BoundaryPoint& e2) {
  // map (e1, e2) to (infinity, 0); distance to the imaginary axis is
  // arccosh(|z| / y)
  MoebiusIsometry g;
  if (e1.is_infinite() && e2.is_infinite())
    throw std::invalid_argument("distance_to_geodesic: endpoints must be distinct");
  if (e1.is_infinite()) {
    g = MoebiusIsometry::translation(-e2.value());
  } else if (e2.is_infinite()) {
    g = MoebiusIsometry::translation(-e1.value());
  } else {
    const double z1 = e1.value(), z2 = e2.value();
    if (z1 == z2) throw std::invalid_argument("distance_to_geodesic: endpoints must be distinct");
    g = send_to_infinity(z1);
    const double img = g(e2).value();
    g = MoebiusIsometry::translation(-img) * g;
  }
  const UhpPoint q = g(p);
  const double u = std::hypot(q.x, q.y) / q.y;
  return std::acosh(std::max(1.0, u));
}

}  // namespace viscomp

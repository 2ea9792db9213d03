#pragma once

// Upper half-plane model of the hyperbolic plane: points, Moebius isometries,
// displacement functions, boundary points, Busemann functions, horoballs,
// geodesic rays. All types are immutable after construction and all
// operations are pure, so everything here is safe to share across threads.

#include <vector>

namespace viscomp {

struct UhpPoint {
  double x = 0.0;
  double y = 1.0;

  UhpPoint() = default;
  UhpPoint(double x_, double y_);  // rejects y <= 0
};

/// Hyperbolic distance, via arccosh(1 + |p-q|^2 / (2 y_p y_q)) in a
/// cancellation-safe log1p form.
double distance(const UhpPoint& p, const UhpPoint& q);

/// Point of the ideal boundary: a real number or the point at infinity.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity();
  static BoundaryPoint finite(double x);

  bool is_infinite() const { return infinite_; }
  double value() const;  // throws for the point at infinity

 private:
  BoundaryPoint(bool inf, double x) : infinite_(inf), x_(x) {}
  bool infinite_;
  double x_;
};

enum class IsometryKind { identity, elliptic, parabolic, hyperbolic };

/// Orientation-preserving isometry z -> (az+b)/(cz+d). Construction requires
/// det = 1 within 1e-12, renormalizes so the determinant is exactly 1, and
/// canonicalizes the sign of the representative (a > 0, or a = 0 and b > 0).
class MoebiusIsometry {
 public:
  MoebiusIsometry();  // identity
  MoebiusIsometry(double a, double b, double c, double d);

  static MoebiusIsometry translation(double t);      // z -> z + t
  static MoebiusIsometry scaling(double s);          // z -> s z, s > 0
  static MoebiusIsometry rotation_about_i(double theta);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double trace() const { return a_ + d_; }

  UhpPoint operator()(const UhpPoint& p) const;
  BoundaryPoint operator()(const BoundaryPoint& z) const;

  MoebiusIsometry inverse() const;
  bool is_identity(double tol = 1e-10) const;

  friend MoebiusIsometry operator*(const MoebiusIsometry& g, const MoebiusIsometry& h);
  bool approx_equal(const MoebiusIsometry& other, double tol = 1e-9) const;

 private:
  double a_, b_, c_, d_;
};

inline MoebiusIsometry conjugate(const MoebiusIsometry& g, const MoebiusIsometry& h) {
  return h * g * h.inverse();
}

/// d_g(p) = d(p, g p).
double displacement(const MoebiusIsometry& g, const UhpPoint& p);

/// Trace classification; the parabolic band |tr| = 2 has tolerance 1e-10.
IsometryKind classify(const MoebiusIsometry& g);

/// 2 arccosh(|tr|/2); throws std::domain_error("no axis") unless hyperbolic.
double translation_length(const MoebiusIsometry& g);

/// Boundary fixed points: two (sorted, infinity last) for hyperbolic, one for
/// parabolic; throws for elliptic or identity input.
std::vector<BoundaryPoint> fixed_points(const MoebiusIsometry& g);

/// Busemann function of the ray from `base` to `z`, normalized to 0 at base.
/// Closed form ln(y_base / y_p) for z at infinity; finite centers are
/// conjugated to infinity first.
double busemann(const BoundaryPoint& z, const UhpPoint& base, const UhpPoint& p);

/// Sublevel set {h_c < level} of the Busemann function based at i.
struct Horoball {
  BoundaryPoint center;
  double level;
};

bool horoball_contains(const Horoball& hb, const UhpPoint& p);

/// Unit-speed geodesic ray with at(0) = base, tending to `endpoint`.
class GeodesicRay {
 public:
  GeodesicRay(const UhpPoint& base, const BoundaryPoint& endpoint);

  UhpPoint at(double t) const;
  const UhpPoint& base() const { return base_; }
  const BoundaryPoint& endpoint() const { return endpoint_; }

 private:
  UhpPoint base_;
  BoundaryPoint endpoint_;
  // conjugating map sending endpoint to infinity, and the base image under it
  MoebiusIsometry to_inf_, from_inf_;
  double x0_, y0_;
};

/// Distance from p to the geodesic with the given distinct ideal endpoints.
double distance_to_geodesic(const UhpPoint& p, const BoundaryPoint& e1, const BoundaryPoint& e2);

}  // namespace viscomp

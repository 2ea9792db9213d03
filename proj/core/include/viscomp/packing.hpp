#pragma once

// Ball volumes and the volume-comparison packing bound N(n, a, b): any
// a-discrete subset of a b-ball in an n-dimensional space with curvature in
// [-1, 0] has at most ceil(V_hyp(b + a/2) / V_hyp(a/2)) elements, since the
// a/2-balls around the points are disjoint and each has at least Euclidean
// volume.

namespace viscomp {

/// Volume of an r-ball in Euclidean n-space.
double euclidean_ball_volume(int n, double r);

/// Volume of an r-ball in the n-dimensional hyperbolic space of curvature -1.
/// Closed forms for n = 2, 3, 4; quadrature of the area element otherwise.
double hyperbolic_ball_volume(int n, double r);

/// Packing bound N(n, a, b); requires 0 < a <= 2b.
long long packing_bound(int n, double a, double b);

}  // namespace viscomp

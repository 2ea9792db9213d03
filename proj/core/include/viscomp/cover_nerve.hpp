#pragma once

// Good-cover machinery: maximal (r/2)-discrete nets, flow-stabilized
// covering sets, nerve complexes from intersection oracles, refinement
// budgets, and (D, C*Vol) complexity verification.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "viscomp/geometry.hpp"
#include "viscomp/thick_thin.hpp"

namespace viscomp {

/// Maximal separation-discrete subset of a sampled domain. Greedy and
/// deterministic in the candidate order: every candidate keeps its distance
/// to all accepted centers, so every sampled point is within `separation`
/// of some center.
struct Net {
  std::vector<UhpPoint> centers;
  double separation = 0.0;
};

Net greedy_net(std::span<const UhpPoint> candidates, double separation);

/// Flow-line extension of a cut ball: vertical whiskers over the footprint
/// interval, between the shrunken-thick boundary and the half-entry-time
/// height sqrt(y_thin * y_thick).
struct CollarPatch {
  double x_min, x_max;
  double y_low, y_high;
};

/// Covering set in the cusp-at-infinity normal form: a hyperbolic r-ball,
/// optionally cut at {y = cut_height} and extended along the flow lines.
struct CoverSet {
  UhpPoint center{0.0, 1.0};
  double radius = 0.0;
  bool stabilized = false;
  std::optional<double> cut_height;
  std::optional<CollarPatch> collar;

  bool contains(const UhpPoint& p) const;
};

/// Cuts the part of the ball above y_thick and extends along the flow lines
/// up to the half-entry-time height; a ball that stays inside the shrunken
/// thick part (or merely touches its boundary) is returned unchanged.
/// Requires the normal form y_thick < collar_top and center.y <= y_thick.
CoverSet stabilize_ball(const CoverSet& b, double y_thick, double collar_top);

/// Nerve complex over vertex indices 0..vertex_count-1; simplices stored by
/// dimension as strictly increasing index tuples, downward closed.
struct NerveComplex {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::vector<int>>> simplices;  // [dim][i] -> tuple

  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  std::size_t count(int k) const {
    return k >= 0 && k <= dim() ? simplices[k].size() : 0;
  }
  std::vector<std::size_t> vertex_degrees() const;
};

/// Tester for common intersection of an index set; must be symmetric and
/// monotone (supersets intersect only if all subsets do).
using IntersectionOracle = std::function<bool(std::span<const int>)>;

/// Builds the nerve up to dimension dim_cap by extending faces; throws
/// std::logic_error if the oracle claims a simplex whose facet is missing
/// (non-monotone oracle).
NerveComplex build_nerve(std::size_t n_sets, const IntersectionOracle& oracle, int dim_cap);

/// Induced subcomplex on a subset of vertices, reindexed by order.
NerveComplex induced_subcomplex(const NerveComplex& complex, std::span<const int> vertices);

/// Oracle over cover sets: closed-form center-distance test for pairs of
/// plain balls, sampled membership grid (pitch defaults to radius/100) for
/// k-wise tests and stabilized sets. The sampled path is approximate; the
/// pitch is recorded for reporting.
IntersectionOracle ball_cover_oracle(std::vector<CoverSet> cover, double pitch = 0.0);

/// Exact interval arithmetic on the unit circle (length-1 wraparound).
/// Arcs have start in [0,1) and length in (0,1]; arcs of length < 1/2 keep
/// intersections connected, which the oracle asserts.
struct CircleArc {
  double start;
  double length;
};

IntersectionOracle circle_arc_oracle(std::vector<CircleArc> arcs);

/// Product patches on the flat unit torus (wraparound square).
struct TorusPatch {
  CircleArc x;
  CircleArc y;
};

IntersectionOracle torus_patch_oracle(std::vector<TorusPatch> patches);

/// 3^n (4 kappa + 1)^(n kappa): pieces needed for one cut ball.
mpz_class refinement_budget_nu0(int n, long long kappa);
/// lambda 2^lambda nu0: pieces after making the cuts compatible across
/// intersecting balls.
mpz_class refinement_budget_nu(long long lambda, const mpz_class& nu0);

/// (nu0, nu) straight from the ledger fields.
std::pair<mpz_class, mpz_class> refinement_budget(const ConstantsLedger& ledger);

/// (C, D) = (nu / Vol_Rn(B_{r/4}), nu * N(n, r/2, 2r)).
std::pair<mpf_class, mpz_class> complexity_constants(const ConstantsLedger& ledger);

/// Vertex-count, vertex-degree and per-dimension simplex-count checks
/// against a (D, C_vol) budget; the k-simplex bound is D^k * C_vol.
struct DCReport {
  std::size_t vertex_count = 0;
  double vertex_bound = 0.0;
  bool vertices_ok = false;
  std::size_t max_degree = 0;
  double degree_bound = 0.0;
  bool degree_ok = false;
  struct CountRow {
    int k;
    std::size_t count;
    double bound;
    bool ok;
  };
  std::vector<CountRow> counts;

  bool pass() const;
};

DCReport check_dc(const NerveComplex& complex, double degree_bound, double vertex_bound);

}  // namespace viscomp

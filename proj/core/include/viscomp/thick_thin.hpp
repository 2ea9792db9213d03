#pragma once

// Thick-thin decomposition machinery for explicitly presented discrete
// groups on the upper half-plane: truncated word enumeration, displacement
// infimum d_Gamma, thin-part membership, closed-form thin boundaries for the
// cyclic normal forms, the collar entry-time map and retraction flow, and
// the ledger of all dimension-dependent constants.
//
// The enumerated word ball is built once at construction and immutable
// afterwards; all queries are pure.

#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "viscomp/geometry.hpp"

namespace viscomp {

class GroupPresentation {
 public:
  /// Generators must be non-identity and non-elliptic; word_cap >= 1.
  GroupPresentation(std::vector<MoebiusIsometry> generators, int word_cap);

  const std::vector<MoebiusIsometry>& generators() const { return generators_; }
  int word_cap() const { return word_cap_; }

  /// All nontrivial elements represented by reduced words of length <=
  /// word_cap, deduplicated under the canonical matrix representative and
  /// closed under inverse.
  const std::vector<MoebiusIsometry>& ball() const { return ball_; }

 private:
  std::vector<MoebiusIsometry> generators_;
  int word_cap_;
  std::vector<MoebiusIsometry> ball_;
};

inline const std::vector<MoebiusIsometry>& group_ball(const GroupPresentation& g) {
  return g.ball();
}

/// Conjugation-invariant assignment gamma -> eps_gamma with values in
/// [eps, margulis_eps/2]; the default rule is the constant eps.
class EpsAssignment {
 public:
  EpsAssignment(double eps, double margulis_eps);
  EpsAssignment(double eps, double margulis_eps,
                std::function<double(const MoebiusIsometry&)> rule);

  double eps() const { return eps_; }
  double margulis_eps() const { return margulis_eps_; }
  /// Level for one element; throws std::logic_error if the rule leaves
  /// [eps, margulis_eps/2].
  double level_for(const MoebiusIsometry& g) const;

 private:
  double eps_, margulis_eps_;
  std::function<double(const MoebiusIsometry&)> rule_;
};

/// inf over the enumerated nontrivial elements of d_gamma(p).
double min_displacement(const GroupPresentation& g, const UhpPoint& p);

/// Membership in the thin part: some enumerated gamma has
/// displacement(gamma, p) < eps_gamma (strict).
bool is_thin(const GroupPresentation& g, const EpsAssignment& levels, const UhpPoint& p);

/// For the cyclic parabolic group <z -> z+1> at level eps, the thin part is
/// exactly {y > y0} with y0 = 1 / (2 sinh(eps/2)). Throws for eps <= 0.
double thin_boundary_height(double eps);

/// For a hyperbolic element of translation length ell < eps whose axis is a
/// geodesic, the sublevel {d < eps} is the tube of this radius around the
/// axis: arccosh(sinh(eps/2) / sinh(ell/2)).
double tube_boundary_radius(double eps, double ell);

/// Length of the vertical geodesic segment from height y_start down to
/// y_thick: ln(y_start / y_thick). Throws "already thick" if
/// y_start <= y_thick.
double entry_time(double y_start, double y_thick);

/// Retraction flow in the cusp-at-infinity normal form: points above
/// y_thick move down the vertical geodesic, reaching {y = y_thick} at
/// s = 1; points at or below y_thick are returned unchanged.
UhpPoint flow(const UhpPoint& p, double s, double y_thick);

enum class ThinKind { tube, cusp };

/// One thin component of a cyclic normal-form configuration. The kind is
/// cusp exactly when the displacement witnesses are parabolic.
struct ThinRegion {
  GroupPresentation group;
  EpsAssignment levels;
  ThinKind kind;
};

ThinRegion make_thin_region(GroupPresentation group, EpsAssignment levels);

/// Entry times sampled over boundary parameters for the cusp-at-infinity
/// normal form with thin boundary y_thin and shrunken-thick boundary
/// y_thick.
struct EntryTimeProfile {
  std::vector<double> xs;
  std::vector<double> times;  // all strictly positive
};

EntryTimeProfile entry_time_profile(double y_thin, double y_thick, std::span<const double> xs);

/// Flood-fill count of connected components of {thin == true} on a uniform
/// Euclidean grid over [x0,x1] x [y0,y1] with the given pitch.
struct GridSpec {
  double x0, x1, y0, y1;
  double pitch;
};

int count_components(const std::function<bool(const UhpPoint&)>& thin, const GridSpec& grid);

/// All dimension-dependent constants. The Margulis constants are configured
/// inputs (no explicit value exists; every downstream formula consumes them
/// symbolically). kappa and the refinement budgets grow so fast that nu0,
/// nu, D are exact big integers and C, E, F are 256-bit floats.
struct ConstantsLedger {
  int n = 2;
  double margulis_eps = 0.32;  // eps(n)
  int margulis_index = 100;    // m(n); informational only
  double eps = 0.0;            // eps(n)/4
  double delta = 0.0;          // eps(n)/8
  double r = 0.0;              // delta/4 = eps(n)/32
  double rho = 0.0;            // min(eps/2, delta/4)
  long long kappa = 0;         // N(n, eps, eps(n))
  long long lambda = 0;        // N(n, r/2, 2r)
  mpz_class nu0;               // 3^n (4 kappa + 1)^(n kappa)
  mpz_class nu;                // lambda 2^lambda nu0
  mpz_class D_degree;          // nu * lambda
  mpf_class C_cover;           // nu / Vol_Rn(B_{r/4})

  /// D^{k-1} + D^k + 1 as an exact rational (k = 0 uses 1/D).
  mpq_class betti_factor(int k) const;
  /// E(k, n) = betti_factor(k) * C.
  mpf_class E_of_k(int k) const;
  /// F = D^{n+1} C ln(sqrt(n+2)); Hadamard-type torsion constant,
  /// method-derived (no explicit value exists to reproduce).
  mpf_class F_torsion() const;
};

/// Builds the ledger; throws for n < 2 or nonpositive margulis_eps.
ConstantsLedger build_ledger(int n, double margulis_eps = 0.32, int margulis_index = 100);

/// Bound C * vol on the number of thin components: vol / V(rho, n) with V
/// the Euclidean ball volume.
double component_count_bound(const ConstantsLedger& ledger, double vol);

}  // namespace viscomp

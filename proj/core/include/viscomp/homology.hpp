#pragma once

// Integer simplicial homology via Smith normal form with exact big-integer
// arithmetic: boundary matrices, SNF with optional unimodular transforms,
// Betti numbers over Q and F_p (independent elimination paths), torsion
// coefficients, and volume-linear bound reports.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "viscomp/thick_thin.hpp"

namespace viscomp {

/// Abstract simplicial complex: strictly increasing vertex tuples, stored by
/// dimension in lexicographic order, downward closed.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Closure of the given simplices (maximal faces suffice); vertex labels
  /// are arbitrary nonnegative ints and kept as given.
  static SimplicialComplex from_simplices(std::span<const std::vector<int>> simplices);

  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int k) const {
    return k >= 0 && k <= dim() ? by_dim_[k].size() : 0;
  }
  const std::vector<std::vector<int>>& simplices(int k) const;
  std::size_t vertex_count() const { return count(0); }
  long long euler_characteristic() const;

 private:
  std::vector<std::vector<std::vector<int>>> by_dim_;
};

/// Dense integer matrix (row-major mpz entries).
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<mpz_class> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  mpz_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  static IntMatrix identity(std::size_t n);
};

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);

/// Oriented boundary map from k-simplices to (k-1)-simplices (alternating
/// signs on the sorted tuples). Throws for k outside [1, dim].
IntMatrix boundary_matrix(const SimplicialComplex& c, int k);

struct SnfResult {
  std::vector<mpz_class> diagonal;  // length min(rows, cols), d1 | d2 | ..., zeros trail
  std::size_t rank = 0;             // number of nonzero diagonal entries
  std::optional<IntMatrix> U, V;    // unimodular, U * A * V = diag, when requested
};

/// Smith normal form by minimal-pivot elimination with divisibility repair;
/// exact arbitrary-precision arithmetic throughout.
SnfResult smith_normal_form(const IntMatrix& m, bool with_transforms = false);

/// Rank over F_p by Gaussian elimination mod p (independent of the SNF path).
std::size_t rank_mod_p(const IntMatrix& m, long long p);

struct HomologySummary {
  int top_dim = -1;
  std::vector<long long> betti_q;                     // degree 0 .. top_dim
  std::map<long long, std::vector<long long>> betti_mod_p;
  std::vector<std::vector<mpz_class>> torsion;        // nontrivial d_i of snf(boundary_{k+1})
  std::vector<double> log_torsion;                    // sum of ln d_i per degree
  std::vector<long long> simplex_counts;

  bool has_torsion() const;
};

HomologySummary homology(const SimplicialComplex& c, std::span<const long long> primes = {});

/// #k-simplices <= A^k * B for every k; reports the first violation.
struct CountReport {
  struct Row {
    int k;
    std::size_t count;
    double bound;
    bool ok;
  };
  std::vector<Row> rows;
  int first_violation = -1;  // -1 when all pass
  bool pass() const { return first_violation < 0; }
};

CountReport simplex_count_check(const SimplicialComplex& c, double A, double B);

/// Per-degree comparison of the homology against the ledger bounds
/// E(k,n) * vol and F * vol. The degree-1 torsion row is excluded (not
/// asserted either way) when the ledger dimension is 3.
struct BoundsReport {
  struct Row {
    int k = 0;
    long long betti = 0;
    double log_torsion = 0.0;
    bool betti_ok = false;
    bool torsion_ok = false;
    bool torsion_excluded = false;  // dimension-3 degree-1 exclusion
  };
  std::vector<Row> rows;
  double vol = 0.0;
  int n = 0;
  bool pass() const;
};

BoundsReport bounds_report(const HomologySummary& summary, const ConstantsLedger& ledger,
                           double vol);

}  // namespace viscomp

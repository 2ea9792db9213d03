#include "viscomp/homology.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <doctest.h>

using namespace viscomp;

namespace {

// --- independent oracles -------------------------------------------------

mpz_class det_laplace(const IntMatrix& m, std::vector<int> rows, std::vector<int> cols) {
  if (rows.empty()) return 1;
  mpz_class det = 0;
  int sign = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + i);
    det += sign * m.at(rows[0], cols[i]) * det_laplace(m, sub_rows, sub_cols);
    sign = -sign;
  }
  return det;
}

mpz_class det_square(const IntMatrix& m) {
  std::vector<int> idx(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) idx[i] = static_cast<int>(i);
  return det_laplace(m, idx, idx);
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  const std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// minor-gcd characterization: d_i = g_i / g_{i-1} with g_i the gcd of all
// i x i minors; brute force, usable up to ~4x4
std::vector<mpz_class> snf_by_minors(const IntMatrix& m) {
  const int steps = static_cast<int>(std::min(m.rows, m.cols));
  std::vector<mpz_class> diag(steps, 0);
  mpz_class prev_gcd = 1;
  for (int k = 1; k <= steps; ++k) {
    std::vector<std::vector<int>> row_sets, col_sets;
    subsets_of_size(static_cast<int>(m.rows), k, row_sets);
    subsets_of_size(static_cast<int>(m.cols), k, col_sets);
    mpz_class g = 0;
    for (const auto& rs : row_sets)
      for (const auto& cs : col_sets) {
        mpz_class d = det_laplace(m, rs, cs);
        mpz_class a;
        mpz_abs(a.get_mpz_t(), d.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
      }
    if (g == 0) break;  // all higher minors vanish; remaining d_i are 0
    diag[k - 1] = g / prev_gcd;
    prev_gcd = g;
  }
  return diag;
}

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

// --- golden complexes ----------------------------------------------------

SimplicialComplex point_complex() {
  const std::vector<std::vector<int>> s = {{0}};
  return SimplicialComplex::from_simplices(s);
}

SimplicialComplex circle_complex() {
  const std::vector<std::vector<int>> s = {{0, 1}, {1, 2}, {0, 2}};
  return SimplicialComplex::from_simplices(s);
}

SimplicialComplex sphere_complex() {
  const std::vector<std::vector<int>> s = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  return SimplicialComplex::from_simplices(s);
}

SimplicialComplex torus7_complex() {
  // 7-vertex triangulation: orbits {i, i+1, i+3} and {i, i+2, i+3} mod 7
  std::vector<std::vector<int>> s;
  for (int i = 0; i < 7; ++i) {
    s.push_back({i, (i + 1) % 7, (i + 3) % 7});
    s.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_simplices(s);
}

SimplicialComplex rp2_complex() {
  // minimal 6-vertex triangulation (antipodal quotient of the icosahedron)
  const std::vector<std::vector<int>> s = {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5},
                                           {0, 4, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 5},
                                           {2, 3, 4}, {3, 4, 5}};
  return SimplicialComplex::from_simplices(s);
}

SimplicialComplex klein_complex();

// closed-surface validator: every edge lies in exactly two triangles
bool is_closed_surface(const SimplicialComplex& c) {
  if (c.dim() != 2) return false;
  std::map<std::vector<int>, int> edge_use;
  for (const auto& tri : c.simplices(2)) {
    edge_use[{tri[0], tri[1]}]++;
    edge_use[{tri[0], tri[2]}]++;
    edge_use[{tri[1], tri[2]}]++;
  }
  if (edge_use.size() != c.count(1)) return false;
  for (const auto& [edge, uses] : edge_use)
    if (uses != 2) return false;
  return true;
}

SimplicialComplex klein_complex() {
  // 3x3 grid quotient of the square with a flip on one side:
  // (x,0)~(x,3) straight, (0,y)~(3,3-y) reversed
  const auto vertex = [](int x, int y) {
    x = ((x % 3) + 3) % 3;  // horizontal wrap handled below
    return y * 3 + x;
  };
  const auto id = [&](int x, int y) {
    if (y == 3) y = 0;
    if (x == 3) {  // flipped side
      x = 0;
      y = (3 - y) % 3;
    }
    return vertex(x, y);
  };
  std::vector<std::vector<int>> tris;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      tris.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      tris.push_back({id(x, y), id(x, y + 1), id(x + 1, y + 1)});
    }
  return SimplicialComplex::from_simplices(tris);
}

}  // namespace

TEST_CASE("complex closure and validation") {
  const std::vector<std::vector<int>> tri = {{2, 0, 1}};
  const SimplicialComplex c = SimplicialComplex::from_simplices(tri);
  CHECK(c.dim() == 2);
  CHECK(c.count(0) == 3);
  CHECK(c.count(1) == 3);
  CHECK(c.count(2) == 1);
  CHECK(c.euler_characteristic() == 1);

  const std::vector<std::vector<int>> bad = {{0, 0, 1}};
  CHECK_THROWS_AS(SimplicialComplex::from_simplices(bad), std::invalid_argument);
  const std::vector<std::vector<int>> neg = {{-1, 0}};
  CHECK_THROWS_AS(SimplicialComplex::from_simplices(neg), std::invalid_argument);
}

TEST_CASE("boundary matrices") {
  const std::vector<std::vector<int>> edge = {{0, 1}};
  const SimplicialComplex c = SimplicialComplex::from_simplices(edge);
  const IntMatrix m = boundary_matrix(c, 1);
  REQUIRE(m.rows == 2);
  REQUIRE(m.cols == 1);
  CHECK(m.at(0, 0) == -1);
  CHECK(m.at(1, 0) == 1);

  // hollow triangle: rank 2 boundary
  const IntMatrix tri = boundary_matrix(circle_complex(), 1);
  CHECK(smith_normal_form(tri).rank == 2);

  // filled triangle: del_1 del_2 = 0
  const std::vector<std::vector<int>> filled = {{0, 1, 2}};
  const SimplicialComplex f = SimplicialComplex::from_simplices(filled);
  const IntMatrix comp = multiply(boundary_matrix(f, 1), boundary_matrix(f, 2));
  for (const auto& e : comp.a) CHECK(e == 0);

  CHECK_THROWS_AS(boundary_matrix(f, 0), std::out_of_range);
  CHECK_THROWS_AS(boundary_matrix(f, 3), std::out_of_range);
}

TEST_CASE("smith normal form examples") {
  const SnfResult r1 = smith_normal_form(from_rows({{1, 2}, {3, 4}}));
  REQUIRE(r1.diagonal.size() == 2);
  CHECK(r1.diagonal[0] == 1);
  CHECK(r1.diagonal[1] == 2);  // |det| = 2 = product of the diagonal

  const SnfResult rz = smith_normal_form(IntMatrix(3, 2));
  CHECK(rz.rank == 0);
  for (const auto& d : rz.diagonal) CHECK(d == 0);

  const SnfResult r2 = smith_normal_form(from_rows({{4, 0}, {0, 6}}));
  CHECK(r2.diagonal[0] == 2);
  CHECK(r2.diagonal[1] == 12);
}

TEST_CASE("smith normal form random property") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> dims(1, 8);
  std::uniform_int_distribution<int> entries(-9, 9);
  int small_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = dims(rng), c = dims(rng);
    IntMatrix m(r, c);
    for (auto& e : m.a) e = entries(rng);

    const SnfResult snf = smith_normal_form(m, true);
    REQUIRE(snf.U.has_value());
    REQUIRE(snf.V.has_value());

    // U A V equals the diagonal exactly
    const IntMatrix prod = multiply(multiply(*snf.U, m), *snf.V);
    for (std::size_t i = 0; i < prod.rows; ++i)
      for (std::size_t j = 0; j < prod.cols; ++j)
        CHECK(prod.at(i, j) == (i == j && i < snf.diagonal.size() ? snf.diagonal[i] : 0));

    // transforms are unimodular
    mpz_class du = det_square(*snf.U), dv = det_square(*snf.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));

    // divisibility chain with trailing zeros
    for (std::size_t i = 0; i + 1 < snf.diagonal.size(); ++i) {
      CHECK(snf.diagonal[i] >= 0);
      if (snf.diagonal[i + 1] != 0) {
        REQUIRE(snf.diagonal[i] != 0);
        CHECK(snf.diagonal[i + 1] % snf.diagonal[i] == 0);
      }
    }

    // minor-gcd oracle on the small instances
    if (r <= 4 && c <= 4) {
      ++small_checked;
      const auto oracle = snf_by_minors(m);
      REQUIRE(oracle.size() == snf.diagonal.size());
      for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(snf.diagonal[i] == oracle[i]);
    }
  }
  CHECK(small_checked > 50);
}

TEST_CASE("smith normal form entry growth stays exact") {
  IntMatrix m(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) m.at(i, j) = (i * j) % 7 - 3;
  const SnfResult snf = smith_normal_form(m, true);
  const IntMatrix prod = multiply(multiply(*snf.U, m), *snf.V);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j)
      CHECK(prod.at(i, j) == (i == j ? snf.diagonal[i] : 0));
  for (std::size_t i = 0; i + 1 < 20; ++i)
    if (snf.diagonal[i + 1] != 0) CHECK(snf.diagonal[i + 1] % snf.diagonal[i] == 0);
}

TEST_CASE("golden homology") {
  const std::vector<long long> primes = {2, 3, 5};

  const HomologySummary pt = homology(point_complex(), primes);
  CHECK(pt.betti_q == std::vector<long long>{1});
  CHECK_FALSE(pt.has_torsion());

  const HomologySummary s1 = homology(circle_complex(), primes);
  CHECK(s1.betti_q == std::vector<long long>{1, 1});
  CHECK_FALSE(s1.has_torsion());

  const HomologySummary s2 = homology(sphere_complex(), primes);
  CHECK(s2.betti_q == std::vector<long long>{1, 0, 1});
  CHECK_FALSE(s2.has_torsion());

  const SimplicialComplex t2 = torus7_complex();
  CHECK(t2.count(0) == 7);
  CHECK(t2.count(1) == 21);
  CHECK(t2.count(2) == 14);
  CHECK(is_closed_surface(t2));
  const HomologySummary torus = homology(t2, primes);
  CHECK(torus.betti_q == std::vector<long long>{1, 2, 1});
  CHECK_FALSE(torus.has_torsion());

  const SimplicialComplex rp2 = rp2_complex();
  CHECK(rp2.count(0) == 6);
  CHECK(rp2.count(1) == 15);
  CHECK(rp2.count(2) == 10);
  CHECK(is_closed_surface(rp2));
  const HomologySummary proj = homology(rp2, primes);
  CHECK(proj.betti_q == std::vector<long long>{1, 0, 0});
  REQUIRE(proj.torsion[1].size() == 1);
  CHECK(proj.torsion[1][0] == 2);
  CHECK(proj.betti_mod_p.at(2) == std::vector<long long>{1, 1, 1});
  CHECK(proj.betti_mod_p.at(3) == std::vector<long long>{1, 0, 0});
  CHECK(proj.log_torsion[1] == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const SimplicialComplex kb = klein_complex();
  CHECK(is_closed_surface(kb));
  CHECK(kb.euler_characteristic() == 0);
  const HomologySummary klein = homology(kb, primes);
  CHECK(klein.betti_q == std::vector<long long>{1, 1, 0});
  REQUIRE(klein.torsion[1].size() == 1);
  CHECK(klein.torsion[1][0] == 2);
  CHECK(klein.betti_mod_p.at(2) == std::vector<long long>{1, 2, 1});
}

TEST_CASE("euler characteristic consistency") {
  for (const SimplicialComplex& c : {point_complex(), circle_complex(), sphere_complex(),
                                     torus7_complex(), rp2_complex(), klein_complex()}) {
    const HomologySummary h = homology(c);
    long long alt_betti = 0, alt_count = 0;
    for (int k = 0; k <= h.top_dim; ++k) {
      const long long sign = k % 2 == 0 ? 1 : -1;
      alt_betti += sign * h.betti_q[k];
      alt_count += sign * h.simplex_counts[k];
    }
    CHECK(alt_betti == alt_count);
    CHECK(alt_count == c.euler_characteristic());
  }
}

TEST_CASE("universal coefficients comparison") {
  // betti_p(k) = betti_q(k) + #p-torsion(k) + #p-torsion(k-1)
  for (const SimplicialComplex& c : {point_complex(), circle_complex(), sphere_complex(),
                                     torus7_complex(), rp2_complex(), klein_complex()}) {
    const std::vector<long long> primes = {2, 3, 5};
    const HomologySummary h = homology(c, primes);
    for (long long p : primes) {
      for (int k = 0; k <= h.top_dim; ++k) {
        long long p_here = 0, p_below = 0;
        for (const auto& d : h.torsion[k])
          if (d % p == 0) ++p_here;
        if (k > 0)
          for (const auto& d : h.torsion[k - 1])
            if (d % p == 0) ++p_below;
        CHECK(h.betti_mod_p.at(p)[k] == h.betti_q[k] + p_here + p_below);
        CHECK(h.betti_mod_p.at(p)[k] >= h.betti_q[k]);
      }
    }
    if (!h.has_torsion()) {
      for (long long p : primes) CHECK(h.betti_mod_p.at(p) == h.betti_q);
    }
  }
}

TEST_CASE("hadamard-type torsion shape") {
  // log|tors H_k| <= #(k+1)-simplices * ln sqrt(k+2)
  for (const SimplicialComplex& c : {torus7_complex(), rp2_complex(), klein_complex()}) {
    const HomologySummary h = homology(c);
    for (int k = 0; k < h.top_dim; ++k) {
      const double cap = static_cast<double>(h.simplex_counts[k + 1]) * std::log(std::sqrt(k + 2.0));
      CHECK(h.log_torsion[k] <= cap + 1e-12);
    }
  }
}

TEST_CASE("simplex count check") {
  CHECK(simplex_count_check(circle_complex(), 2.0, 3.0).pass());  // 3 edges <= 2*3
  const std::vector<std::vector<int>> k4 = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  const SimplicialComplex K4 = SimplicialComplex::from_simplices(k4);
  CHECK(simplex_count_check(K4, 3.0, 4.0).pass());  // 6 <= 12, 4 <= 36

  const std::vector<std::vector<int>> path = {{0, 1}, {1, 2}};
  const SimplicialComplex P = SimplicialComplex::from_simplices(path);
  const CountReport fail = simplex_count_check(P, 0.5, 3.0);
  CHECK_FALSE(fail.pass());
  CHECK(fail.first_violation == 1);  // 2 edges > 0.5 * 3
}

TEST_CASE("bounds report") {
  const ConstantsLedger ledger = build_ledger(2, 0.32);

  const HomologySummary proj = homology(rp2_complex(), std::vector<long long>{2});
  const BoundsReport ok = bounds_report(proj, ledger, 1.0);
  CHECK(ok.pass());
  for (const auto& row : ok.rows) CHECK_FALSE(row.torsion_excluded);

  // dimension 3 flags the degree-1 torsion row as excluded
  const ConstantsLedger l3 = build_ledger(3, 0.32);
  const BoundsReport dim3 = bounds_report(proj, l3, 1.0);
  bool saw_excluded = false;
  for (const auto& row : dim3.rows) saw_excluded |= row.k == 1 && row.torsion_excluded;
  CHECK(saw_excluded);

  CHECK_THROWS_AS(bounds_report(proj, ledger, 0.0), std::invalid_argument);

  // empty complex: vacuous pass
  const HomologySummary empty;
  CHECK(bounds_report(empty, ledger, 1.0).pass());
  CHECK(bounds_report(empty, ledger, 1.0).rows.empty());
}

TEST_CASE("mod-p rank is an independent path") {
  // rank over F_2 of the RP^2 degree-2 boundary differs from the Q-rank
  const IntMatrix del2 = boundary_matrix(rp2_complex(), 2);
  const std::size_t rank_q = smith_normal_form(del2).rank;
  CHECK(rank_q == 10);            // all 10 columns independent over Q
  CHECK(rank_mod_p(del2, 2) == 9);  // the Z/2 class appears
  CHECK(rank_mod_p(del2, 3) == 10);
}

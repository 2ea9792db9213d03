#include "viscomp/homology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace viscomp {

SimplicialComplex SimplicialComplex::from_simplices(std::span<const std::vector<int>> simplices) {
  std::set<std::vector<int>> closure;
  std::vector<std::vector<int>> stack;
  for (const auto& s : simplices) {
    if (s.empty()) throw std::invalid_argument("SimplicialComplex: empty simplex");
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("SimplicialComplex: repeated vertex in a simplex");
    if (sorted.front() < 0) throw std::invalid_argument("SimplicialComplex: negative vertex label");
    stack.push_back(std::move(sorted));
  }
  while (!stack.empty()) {
    std::vector<int> s = std::move(stack.back());
    stack.pop_back();
    if (!closure.insert(s).second) continue;
    if (s.size() > 1) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        face.reserve(s.size() - 1);
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        stack.push_back(std::move(face));
      }
    }
  }
  SimplicialComplex c;
  for (const auto& s : closure) {
    const std::size_t k = s.size() - 1;
    if (c.by_dim_.size() <= k) c.by_dim_.resize(k + 1);
    c.by_dim_[k].push_back(s);
  }
  // std::set iteration is lex-sorted within each length? no: mixed lengths,
  // so sort each dimension level explicitly
  for (auto& level : c.by_dim_) std::sort(level.begin(), level.end());
  return c;
}

const std::vector<std::vector<int>>& SimplicialComplex::simplices(int k) const {
  if (k < 0 || k > dim()) throw std::out_of_range("SimplicialComplex: dimension out of range");
  return by_dim_[k];
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
  return chi;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("multiply: shape mismatch");
  IntMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const mpz_class& xv = x.at(i, k);
      if (xv == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) += xv * y.at(k, j);
    }
  return out;
}

IntMatrix boundary_matrix(const SimplicialComplex& c, int k) {
  if (k < 1 || k > c.dim()) throw std::out_of_range("boundary_matrix: k must lie in [1, dim]");
  const auto& rows = c.simplices(k - 1);
  const auto& cols = c.simplices(k);
  std::map<std::vector<int>, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;

  IntMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& simplex = cols[j];
    int sign = 1;
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      std::vector<int> face;
      face.reserve(simplex.size() - 1);
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != drop) face.push_back(simplex[i]);
      m.at(row_index.at(face), j) = sign;
      sign = -sign;
    }
  }
  return m;
}

namespace {

// row/column elementary operations, mirrored into the transforms when present
struct SnfWork {
  IntMatrix a;
  IntMatrix* u;  // row ops (left), same ops applied
  IntMatrix* v;  // col ops (right)

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
    if (u)
      for (std::size_t c = 0; c < u->cols; ++c) std::swap(u->at(i, c), u->at(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
    if (v)
      for (std::size_t r = 0; r < v->rows; ++r) std::swap(v->at(r, i), v->at(r, j));
  }
  void add_row(std::size_t dst, std::size_t src, const mpz_class& q) {  // row dst += q * row src
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols; ++c) a.at(dst, c) += q * a.at(src, c);
    if (u)
      for (std::size_t c = 0; c < u->cols; ++c) u->at(dst, c) += q * u->at(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows; ++r) a.at(r, dst) += q * a.at(r, src);
    if (v)
      for (std::size_t r = 0; r < v->rows; ++r) v->at(r, dst) += q * v->at(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
    if (u)
      for (std::size_t c = 0; c < u->cols; ++c) u->at(i, c) = -u->at(i, c);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m, bool with_transforms) {
  SnfResult result;
  IntMatrix u, v;
  if (with_transforms) {
    u = IntMatrix::identity(m.rows);
    v = IntMatrix::identity(m.cols);
  }
  SnfWork w{m, with_transforms ? &u : nullptr, with_transforms ? &v : nullptr};
  const std::size_t steps = std::min(m.rows, m.cols);

  for (std::size_t t = 0; t < steps; ++t) {
    // minimal nonzero pivot in the trailing submatrix
    std::size_t pr = t, pc = t;
    bool found = false;
    for (std::size_t i = t; i < m.rows; ++i)
      for (std::size_t j = t; j < m.cols; ++j) {
        const mpz_class& e = w.a.at(i, j);
        if (e == 0) continue;
        if (!found || mpz_cmpabs(e.get_mpz_t(), w.a.at(pr, pc).get_mpz_t()) < 0) {
          pr = i;
          pc = j;
          found = true;
        }
      }
    if (!found) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);

    for (;;) {
      // clear column t with division steps; a nonzero remainder becomes the
      // new, strictly smaller pivot
      bool dirty = false;
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (w.a.at(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.a.at(i, t).get_mpz_t(), w.a.at(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (w.a.at(i, t) != 0) {
          w.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (w.a.at(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.a.at(t, j).get_mpz_t(), w.a.at(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (w.a.at(t, j) != 0) {
          w.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;

      // divisibility repair: pivot must divide the whole trailing submatrix
      bool repaired = false;
      for (std::size_t i = t + 1; i < m.rows && !repaired; ++i)
        for (std::size_t j = t + 1; j < m.cols && !repaired; ++j) {
          if (w.a.at(i, j) % w.a.at(t, t) != 0) {
            w.add_row(t, i, 1);
            repaired = true;
          }
        }
      if (!repaired) break;
    }
    if (w.a.at(t, t) < 0) w.negate_row(t);
  }

  result.diagonal.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    result.diagonal[t] = w.a.at(t, t);
    if (result.diagonal[t] != 0) ++result.rank;
  }
  if (with_transforms) {
    result.U = std::move(u);
    result.V = std::move(v);
  }
  return result;
}

std::size_t rank_mod_p(const IntMatrix& m, long long p) {
  if (p < 2) throw std::invalid_argument("rank_mod_p: p must be >= 2");
  std::vector<std::vector<long long>> a(m.rows, std::vector<long long>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      const long long e = mpz_fdiv_ui(m.at(i, j).get_mpz_t(), static_cast<unsigned long>(p));
      a[i][j] = e;
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows) continue;
    std::swap(a[rank], a[pivot]);
    // modular inverse by Fermat (p prime)
    long long inv = 1, base = a[rank][col] % p, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (std::size_t j = col; j < m.cols; ++j) a[rank][j] = a[rank][j] * inv % p;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const long long f = a[i][col];
      for (std::size_t j = col; j < m.cols; ++j)
        a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

bool HomologySummary::has_torsion() const {
  for (const auto& degree : torsion)
    if (!degree.empty()) return true;
  return false;
}

HomologySummary homology(const SimplicialComplex& c, std::span<const long long> primes) {
  HomologySummary summary;
  summary.top_dim = c.dim();
  if (c.dim() < 0) return summary;

  const int top = c.dim();
  std::vector<IntMatrix> boundaries(top + 2);  // boundaries[k] = del_k, zero-shaped at the ends
  boundaries[0] = IntMatrix(0, c.count(0));
  for (int k = 1; k <= top; ++k) boundaries[k] = boundary_matrix(c, k);
  boundaries[top + 1] = IntMatrix(c.count(top), 0);

  // chain-complex identity, checked once per run
  for (int k = 1; k < top; ++k) {
    const IntMatrix comp = multiply(boundaries[k], boundaries[k + 1]);
    for (const auto& e : comp.a)
      if (e != 0) throw std::logic_error("homology: boundary composition is nonzero");
  }

  std::vector<std::size_t> ranks(top + 2, 0);
  std::vector<std::vector<mpz_class>> torsion(top + 1);
  for (int k = 1; k <= top + 1; ++k) {
    const SnfResult snf = smith_normal_form(boundaries[k]);
    ranks[k] = snf.rank;
    if (k <= top + 0) {
      // torsion of H_{k-1} comes from del_k
      std::vector<mpz_class> tors;
      for (const auto& d : snf.diagonal)
        if (d > 1) tors.push_back(d);
      torsion[k - 1] = std::move(tors);
    }
  }

  summary.betti_q.resize(top + 1);
  summary.torsion.resize(top + 1);
  summary.log_torsion.assign(top + 1, 0.0);
  summary.simplex_counts.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    summary.simplex_counts[k] = static_cast<long long>(c.count(k));
    summary.betti_q[k] = static_cast<long long>(c.count(k)) -
                         static_cast<long long>(ranks[k]) -
                         static_cast<long long>(ranks[k + 1]);
    summary.torsion[k] = torsion[k];
    for (const auto& d : torsion[k]) summary.log_torsion[k] += std::log(d.get_d());
  }

  for (long long p : primes) {
    std::vector<long long> betti(top + 1);
    std::vector<std::size_t> p_ranks(top + 2, 0);
    for (int k = 1; k <= top; ++k) p_ranks[k] = rank_mod_p(boundaries[k], p);
    for (int k = 0; k <= top; ++k)
      betti[k] = static_cast<long long>(c.count(k)) - static_cast<long long>(p_ranks[k]) -
                 static_cast<long long>(p_ranks[k + 1]);
    summary.betti_mod_p[p] = std::move(betti);
  }
  return summary;
}

CountReport simplex_count_check(const SimplicialComplex& c, double A, double B) {
  CountReport report;
  for (int k = 0; k <= c.dim(); ++k) {
    const double bound = std::pow(A, k) * B;
    const std::size_t count = c.count(k);
    const bool ok = static_cast<double>(count) <= bound;
    report.rows.push_back({k, count, bound, ok});
    if (!ok && report.first_violation < 0) report.first_violation = k;
  }
  return report;
}

bool BoundsReport::pass() const {
  for (const auto& row : rows) {
    if (!row.betti_ok) return false;
    if (!row.torsion_excluded && !row.torsion_ok) return false;
  }
  return true;
}

BoundsReport bounds_report(const HomologySummary& summary, const ConstantsLedger& ledger,
                           double vol) {
  if (!(vol > 0.0)) throw std::invalid_argument("bounds_report: volume must be positive");
  BoundsReport report;
  report.vol = vol;
  report.n = ledger.n;
  const mpf_class volf(vol, 256);
  const mpf_class torsion_budget = ledger.F_torsion() * volf;
  for (int k = 0; k <= summary.top_dim; ++k) {
    BoundsReport::Row row;
    row.k = k;
    row.betti = summary.betti_q[k];
    row.log_torsion = summary.log_torsion[k];
    const mpf_class betti_budget = ledger.E_of_k(k) * volf;
    row.betti_ok = mpf_class(static_cast<double>(row.betti), 256) <= betti_budget;
    row.torsion_excluded = ledger.n == 3 && k == 1;
    row.torsion_ok = mpf_class(row.log_torsion, 256) <= torsion_budget;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace viscomp

#include "viscomp/thick_thin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "viscomp/packing.hpp"

namespace viscomp {

namespace {

bool contains_matrix(const std::vector<MoebiusIsometry>& list, const MoebiusIsometry& g) {
  for (const auto& h : list)
    if (h.approx_equal(g)) return true;
  return false;
}

}  // namespace

GroupPresentation::GroupPresentation(std::vector<MoebiusIsometry> generators, int word_cap)
    : generators_(std::move(generators)), word_cap_(word_cap) {
  if (generators_.empty())
    throw std::invalid_argument("GroupPresentation: generator list is empty");
  if (word_cap_ < 1) throw std::invalid_argument("GroupPresentation: word_cap must be >= 1");
  for (const auto& g : generators_) {
    const IsometryKind kind = classify(g);
    if (kind == IsometryKind::identity)
      throw std::invalid_argument("GroupPresentation: identity generator");
    if (kind == IsometryKind::elliptic)
      throw std::invalid_argument("GroupPresentation: elliptic generator");
  }

  // symbols: generators and their inverses; words are freely reduced and
  // globally deduplicated by the canonical matrix
  std::vector<MoebiusIsometry> symbols;
  for (const auto& g : generators_) {
    symbols.push_back(g);
    symbols.push_back(g.inverse());
  }
  const auto symbol_inverse = [&](int s) { return s ^ 1; };

  struct Word {
    MoebiusIsometry m;
    int last_symbol;
  };
  std::vector<Word> frontier;
  for (int s = 0; s < static_cast<int>(symbols.size()); ++s) {
    const MoebiusIsometry& m = symbols[s];
    if (!m.is_identity() && !contains_matrix(ball_, m)) ball_.push_back(m);
    frontier.push_back({m, s});
  }
  for (int len = 2; len <= word_cap_; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int s = 0; s < static_cast<int>(symbols.size()); ++s) {
        if (s == symbol_inverse(w.last_symbol)) continue;
        const MoebiusIsometry m = w.m * symbols[s];
        next.push_back({m, s});
        if (!m.is_identity() && !contains_matrix(ball_, m)) ball_.push_back(m);
      }
    }
    frontier = std::move(next);
  }
}

EpsAssignment::EpsAssignment(double eps, double margulis_eps)
    : EpsAssignment(eps, margulis_eps, {}) {}

EpsAssignment::EpsAssignment(double eps, double margulis_eps,
                             std::function<double(const MoebiusIsometry&)> rule)
    : eps_(eps), margulis_eps_(margulis_eps), rule_(std::move(rule)) {
  if (!(eps_ > 0.0) || !(margulis_eps_ > 0.0))
    throw std::invalid_argument("EpsAssignment: levels must be positive");
  if (eps_ > margulis_eps_ / 2.0)
    throw std::invalid_argument("EpsAssignment: eps must lie in (0, margulis_eps/2]");
}

double EpsAssignment::level_for(const MoebiusIsometry& g) const {
  if (!rule_) return eps_;
  const double level = rule_(g);
  if (level < eps_ - 1e-12 || level > margulis_eps_ / 2.0 + 1e-12)
    throw std::logic_error("EpsAssignment: rule left [eps, margulis_eps/2]");
  return level;
}

double min_displacement(const GroupPresentation& g, const UhpPoint& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : g.ball()) best = std::min(best, displacement(m, p));
  return best;
}

bool is_thin(const GroupPresentation& g, const EpsAssignment& levels, const UhpPoint& p) {
  for (const auto& m : g.ball())
    if (displacement(m, p) < levels.level_for(m)) return true;
  return false;
}

double thin_boundary_height(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("thin_boundary_height: eps must be positive");
  return 1.0 / (2.0 * std::sinh(eps / 2.0));
}

double tube_boundary_radius(double eps, double ell) {
  if (!(eps > 0.0) || !(ell > 0.0))
    throw std::domain_error("tube_boundary_radius: eps and ell must be positive");
  const double ratio = std::sinh(eps / 2.0) / std::sinh(ell / 2.0);
  if (ratio < 1.0) return 0.0;  // sublevel set is empty
  return std::acosh(ratio);
}

double entry_time(double y_start, double y_thick) {
  if (!(y_thick > 0.0)) throw std::domain_error("entry_time: y_thick must be positive");
  if (!(y_start > y_thick)) throw std::domain_error("entry_time: already thick");
  return std::log(y_start / y_thick);
}

UhpPoint flow(const UhpPoint& p, double s, double y_thick) {
  if (s < 0.0 || s > 1.0) throw std::domain_error("flow: time must lie in [0, 1]");
  if (!(y_thick > 0.0)) throw std::domain_error("flow: y_thick must be positive");
  if (p.y <= y_thick) return p;
  const double y = std::exp((1.0 - s) * std::log(p.y) + s * std::log(y_thick));
  return UhpPoint(p.x, s >= 1.0 ? y_thick : y);
}

ThinRegion make_thin_region(GroupPresentation group, EpsAssignment levels) {
  bool any_parabolic = false, any_hyperbolic = false;
  for (const auto& m : group.ball()) {
    const IsometryKind kind = classify(m);
    any_parabolic |= kind == IsometryKind::parabolic;
    any_hyperbolic |= kind == IsometryKind::hyperbolic;
  }
  if (any_parabolic && any_hyperbolic)
    throw std::invalid_argument("make_thin_region: mixed isometry types in one component");
  return ThinRegion{std::move(group), std::move(levels),
                    any_parabolic ? ThinKind::cusp : ThinKind::tube};
}

EntryTimeProfile entry_time_profile(double y_thin, double y_thick, std::span<const double> xs) {
  if (!(y_thin > y_thick) || !(y_thick > 0.0))
    throw std::invalid_argument("entry_time_profile: need y_thin > y_thick > 0");
  EntryTimeProfile profile;
  profile.xs.assign(xs.begin(), xs.end());
  profile.times.assign(xs.size(), entry_time(y_thin, y_thick));
  return profile;
}

int count_components(const std::function<bool(const UhpPoint&)>& thin, const GridSpec& grid) {
  if (!(grid.pitch > 0.0) || !(grid.x1 > grid.x0) || !(grid.y1 > grid.y0) || !(grid.y0 > 0.0))
    throw std::invalid_argument("count_components: malformed grid");
  const int nx = static_cast<int>(std::floor((grid.x1 - grid.x0) / grid.pitch)) + 1;
  const int ny = static_cast<int>(std::floor((grid.y1 - grid.y0) / grid.pitch)) + 1;
  std::vector<char> mask(static_cast<size_t>(nx) * ny, 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      mask[static_cast<size_t>(j) * nx + i] =
          thin(UhpPoint(grid.x0 + i * grid.pitch, grid.y0 + j * grid.pitch)) ? 1 : 0;

  std::vector<int> label(mask.size(), -1);
  int components = 0;
  std::vector<int> stack;
  for (size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || label[start] >= 0) continue;
    stack.push_back(static_cast<int>(start));
    label[start] = components;
    while (!stack.empty()) {
      const int cell = stack.back();
      stack.pop_back();
      const int ci = cell % nx, cj = cell / nx;
      const int neighbors[4][2] = {{ci - 1, cj}, {ci + 1, cj}, {ci, cj - 1}, {ci, cj + 1}};
      for (const auto& nb : neighbors) {
        if (nb[0] < 0 || nb[0] >= nx || nb[1] < 0 || nb[1] >= ny) continue;
        const int idx = nb[1] * nx + nb[0];
        if (mask[idx] && label[idx] < 0) {
          label[idx] = components;
          stack.push_back(idx);
        }
      }
    }
    ++components;
  }
  return components;
}

mpq_class ConstantsLedger::betti_factor(int k) const {
  if (k < 0) throw std::invalid_argument("betti_factor: degree must be nonnegative");
  mpq_class result;
  if (k == 0) {
    result = mpq_class(1) / mpq_class(D_degree);  // D^{-1}
  } else {
    mpz_class dk1;
    mpz_pow_ui(dk1.get_mpz_t(), D_degree.get_mpz_t(), static_cast<unsigned long>(k - 1));
    result = mpq_class(dk1);
  }
  mpz_class dk;
  mpz_pow_ui(dk.get_mpz_t(), D_degree.get_mpz_t(), static_cast<unsigned long>(k));
  result += mpq_class(dk) + 1;
  return result;
}

mpf_class ConstantsLedger::E_of_k(int k) const {
  mpf_class factor(betti_factor(k), 256);
  return factor * C_cover;
}

mpf_class ConstantsLedger::F_torsion() const {
  mpz_class dpow;
  mpz_pow_ui(dpow.get_mpz_t(), D_degree.get_mpz_t(), static_cast<unsigned long>(n + 1));
  mpf_class result(dpow, 256);
  result *= C_cover;
  result *= mpf_class(std::log(std::sqrt(n + 2.0)), 256);
  return result;
}

ConstantsLedger build_ledger(int n, double margulis_eps, int margulis_index) {
  if (n < 2) throw std::invalid_argument("build_ledger: dimension must be >= 2");
  if (!(margulis_eps > 0.0))
    throw std::invalid_argument("build_ledger: margulis_eps must be positive");
  if (margulis_index < 1)
    throw std::invalid_argument("build_ledger: margulis_index must be positive");

  ConstantsLedger ledger;
  ledger.n = n;
  ledger.margulis_eps = margulis_eps;
  ledger.margulis_index = margulis_index;
  ledger.eps = margulis_eps / 4.0;
  ledger.delta = margulis_eps / 8.0;
  ledger.r = ledger.delta / 4.0;
  ledger.rho = std::min(ledger.eps / 2.0, ledger.delta / 4.0);
  ledger.kappa = packing_bound(n, ledger.eps, margulis_eps);
  ledger.lambda = packing_bound(n, ledger.r / 2.0, 2.0 * ledger.r);

  mpz_class base = 4 * mpz_class(static_cast<long>(ledger.kappa)) + 1;
  mpz_class pow;
  mpz_pow_ui(pow.get_mpz_t(), base.get_mpz_t(),
             static_cast<unsigned long>(n) * static_cast<unsigned long>(ledger.kappa));
  mpz_class three_n;
  mpz_ui_pow_ui(three_n.get_mpz_t(), 3, static_cast<unsigned long>(n));
  ledger.nu0 = three_n * pow;

  mpz_class two_lambda;
  mpz_ui_pow_ui(two_lambda.get_mpz_t(), 2, static_cast<unsigned long>(ledger.lambda));
  ledger.nu = mpz_class(static_cast<long>(ledger.lambda)) * two_lambda * ledger.nu0;

  ledger.D_degree = ledger.nu * mpz_class(static_cast<long>(ledger.lambda));
  ledger.C_cover = mpf_class(ledger.nu, 256) /
                   mpf_class(euclidean_ball_volume(n, ledger.r / 4.0), 256);
  return ledger;
}

double component_count_bound(const ConstantsLedger& ledger, double vol) {
  if (!(vol > 0.0)) throw std::invalid_argument("component_count_bound: volume must be positive");
  return vol / euclidean_ball_volume(ledger.n, ledger.rho);
}

}  // namespace viscomp

#include "viscomp/cover_nerve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

#include "viscomp/packing.hpp"

namespace viscomp {

Net greedy_net(std::span<const UhpPoint> candidates, double separation) {
  if (!(separation > 0.0)) throw std::invalid_argument("greedy_net: separation must be positive");
  Net net;
  net.separation = separation;
  for (const UhpPoint& p : candidates) {
    bool keep = true;
    for (const UhpPoint& c : net.centers) {
      if (distance(p, c) < separation) {
        keep = false;
        break;
      }
    }
    if (keep) net.centers.push_back(p);
  }
  return net;
}

bool CoverSet::contains(const UhpPoint& p) const {
  const bool in_ball = distance(center, p) < radius;
  if (!cut_height) return in_ball;
  if (in_ball && p.y <= *cut_height) return true;
  if (collar && p.x > collar->x_min && p.x < collar->x_max && p.y > collar->y_low &&
      p.y < collar->y_high)
    return true;
  return false;
}

CoverSet stabilize_ball(const CoverSet& b, double y_thick, double collar_top) {
  if (!(y_thick > 0.0) || !(collar_top > y_thick))
    throw std::invalid_argument("stabilize_ball: need 0 < y_thick < collar_top");
  if (b.center.y > y_thick)
    throw std::invalid_argument("stabilize_ball: center must lie in the shrunken thick part");
  // Euclidean picture of the hyperbolic ball: center (x, y cosh r), radius y sinh r
  const double ecy = b.center.y * std::cosh(b.radius);
  const double erad = b.center.y * std::sinh(b.radius);
  if (ecy + erad <= y_thick) return b;  // no exit, tangency included (open sets)

  CoverSet out = b;
  out.stabilized = true;
  out.cut_height = y_thick;
  const double dy = y_thick - ecy;
  const double hw = std::sqrt(erad * erad - dy * dy);
  out.collar = CollarPatch{b.center.x - hw, b.center.x + hw, y_thick,
                           std::sqrt(collar_top * y_thick)};
  return out;
}

std::vector<std::size_t> NerveComplex::vertex_degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  if (dim() >= 1) {
    for (const auto& e : simplices[1]) {
      ++deg[e[0]];
      ++deg[e[1]];
    }
  }
  return deg;
}

NerveComplex build_nerve(std::size_t n_sets, const IntersectionOracle& oracle, int dim_cap) {
  if (dim_cap < 0) throw std::invalid_argument("build_nerve: dim_cap must be nonnegative");
  NerveComplex complex;
  complex.vertex_count = n_sets;
  complex.simplices.emplace_back();
  for (std::size_t v = 0; v < n_sets; ++v)
    complex.simplices[0].push_back({static_cast<int>(v)});
  if (dim_cap == 0 || n_sets < 2) return complex;

  std::vector<std::vector<bool>> adjacent(n_sets, std::vector<bool>(n_sets, false));
  std::vector<std::vector<int>> edges;
  std::vector<int> pair(2);
  for (std::size_t i = 0; i + 1 < n_sets; ++i) {
    for (std::size_t j = i + 1; j < n_sets; ++j) {
      pair[0] = static_cast<int>(i);
      pair[1] = static_cast<int>(j);
      if (oracle(pair)) {
        adjacent[i][j] = adjacent[j][i] = true;
        edges.push_back(pair);
      }
    }
  }
  if (edges.empty()) return complex;
  complex.simplices.push_back(std::move(edges));

  std::set<std::vector<int>> known(complex.simplices[1].begin(), complex.simplices[1].end());
  for (int k = 2; k <= dim_cap; ++k) {
    const auto& faces = complex.simplices[k - 1];
    std::vector<std::vector<int>> next;
    for (const auto& face : faces) {
      for (int v = face.back() + 1; v < static_cast<int>(n_sets); ++v) {
        bool linked = true;
        for (int u : face) {
          if (!adjacent[u][v]) {
            linked = false;
            break;
          }
        }
        if (!linked) continue;
        std::vector<int> candidate = face;
        candidate.push_back(v);
        bool facets_ok = true;
        for (std::size_t drop = 0; drop + 1 < candidate.size() && facets_ok; ++drop) {
          std::vector<int> facet;
          for (std::size_t i = 0; i < candidate.size(); ++i)
            if (i != drop) facet.push_back(candidate[i]);
          facets_ok = known.count(facet) > 0;
        }
        if (!facets_ok) {
          // a monotone oracle cannot accept a set whose facet was rejected
          if (oracle(candidate))
            throw std::logic_error("build_nerve: non-monotone intersection oracle");
          continue;
        }
        if (oracle(candidate)) {
          next.push_back(candidate);
          known.insert(candidate);
        }
      }
    }
    if (next.empty()) break;
    complex.simplices.push_back(std::move(next));
  }
  return complex;
}

NerveComplex induced_subcomplex(const NerveComplex& complex, std::span<const int> vertices) {
  std::map<int, int> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<int>(i);
  NerveComplex sub;
  sub.vertex_count = vertices.size();
  for (const auto& level : complex.simplices) {
    std::vector<std::vector<int>> kept;
    for (const auto& simplex : level) {
      std::vector<int> mapped;
      mapped.reserve(simplex.size());
      bool all = true;
      for (int v : simplex) {
        const auto it = index.find(v);
        if (it == index.end()) {
          all = false;
          break;
        }
        mapped.push_back(it->second);
      }
      if (all) {
        std::sort(mapped.begin(), mapped.end());
        kept.push_back(std::move(mapped));
      }
    }
    if (kept.empty() && !sub.simplices.empty()) break;
    sub.simplices.push_back(std::move(kept));
  }
  while (!sub.simplices.empty() && sub.simplices.back().empty()) sub.simplices.pop_back();
  return sub;
}

namespace {

struct Box {
  double x0, x1, y0, y1;
  bool empty() const { return !(x0 < x1 && y0 < y1); }
};

Box bounding_box(const CoverSet& s) {
  const double erad = s.center.y * std::sinh(s.radius);
  Box box{s.center.x - erad, s.center.x + erad, s.center.y * std::exp(-s.radius),
          s.center.y * std::exp(s.radius)};
  if (s.cut_height) box.y1 = std::min(box.y1, *s.cut_height);
  if (s.collar) {
    box.x0 = std::min(box.x0, s.collar->x_min);
    box.x1 = std::max(box.x1, s.collar->x_max);
    box.y1 = std::max(box.y1, s.collar->y_high);
  }
  return box;
}

Box intersect(const Box& a, const Box& b) {
  return Box{std::max(a.x0, b.x0), std::min(a.x1, b.x1), std::max(a.y0, b.y0),
             std::min(a.y1, b.y1)};
}

}  // namespace

IntersectionOracle ball_cover_oracle(std::vector<CoverSet> cover, double pitch) {
  auto sets = std::make_shared<std::vector<CoverSet>>(std::move(cover));
  return [sets, pitch](std::span<const int> idx) -> bool {
    if (idx.empty()) return false;
    if (idx.size() == 1) return true;

    bool all_plain = true;
    for (int i : idx) all_plain &= !(*sets)[i].cut_height.has_value();
    if (idx.size() == 2 && all_plain) {
      const CoverSet& a = (*sets)[idx[0]];
      const CoverSet& b = (*sets)[idx[1]];
      return distance(a.center, b.center) < a.radius + b.radius;
    }

    // sampled membership grid over the common bounding box
    Box box = bounding_box((*sets)[idx[0]]);
    double min_radius = (*sets)[idx[0]].radius;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      box = intersect(box, bounding_box((*sets)[idx[i]]));
      min_radius = std::min(min_radius, (*sets)[idx[i]].radius);
    }
    if (box.empty()) return false;
    const double hyp_pitch = pitch > 0.0 ? pitch : min_radius / 100.0;
    const double step = hyp_pitch * box.y0;  // Euclidean pitch, conservative
    const int nx = std::max(2, static_cast<int>(std::ceil((box.x1 - box.x0) / step)) + 1);
    const int ny = std::max(2, static_cast<int>(std::ceil((box.y1 - box.y0) / step)) + 1);
    for (int j = 0; j < ny; ++j) {
      const double y = box.y0 + (box.y1 - box.y0) * j / (ny - 1);
      if (!(y > 0.0)) continue;
      for (int i = 0; i < nx; ++i) {
        const UhpPoint p(box.x0 + (box.x1 - box.x0) * i / (nx - 1), y);
        bool inside = true;
        for (int s : idx) {
          if (!(*sets)[s].contains(p)) {
            inside = false;
            break;
          }
        }
        if (inside) return true;
      }
    }
    return false;
  };
}

namespace {

// intersection of two arcs on the length-1 circle, assuming the result is
// connected (guaranteed for arcs of total length < 1)
std::optional<CircleArc> clip_arc(const CircleArc& a, const CircleArc& b) {
  if (a.length >= 1.0) return b;
  if (b.length >= 1.0) return a;
  double d = std::fmod(b.start - a.start, 1.0);
  if (d < 0.0) d += 1.0;
  // piece of b inside a, measured in a's frame: [d, d + b.length] vs [0, a.length]
  const double lo1 = d, hi1 = std::min(d + b.length, a.length);
  const double lo2 = 0.0, hi2 = std::min(d - 1.0 + b.length, a.length);
  const bool p1 = lo1 < hi1 && lo1 < a.length;
  const bool p2 = hi2 > lo2;
  if (p1 && p2)
    throw std::logic_error("circle arcs: disconnected intersection (arcs too long)");
  if (p1) {
    double start = std::fmod(a.start + lo1, 1.0);
    return CircleArc{start, hi1 - lo1};
  }
  if (p2) return CircleArc{a.start, hi2 - lo2};
  return std::nullopt;
}

}  // namespace

IntersectionOracle circle_arc_oracle(std::vector<CircleArc> arcs) {
  auto data = std::make_shared<std::vector<CircleArc>>(std::move(arcs));
  return [data](std::span<const int> idx) -> bool {
    if (idx.empty()) return false;
    CircleArc acc = (*data)[idx[0]];
    for (std::size_t i = 1; i < idx.size(); ++i) {
      const auto clipped = clip_arc(acc, (*data)[idx[i]]);
      if (!clipped) return false;
      acc = *clipped;
    }
    return true;
  };
}

IntersectionOracle torus_patch_oracle(std::vector<TorusPatch> patches) {
  auto data = std::make_shared<std::vector<TorusPatch>>(std::move(patches));
  return [data](std::span<const int> idx) -> bool {
    if (idx.empty()) return false;
    CircleArc ax = (*data)[idx[0]].x;
    CircleArc ay = (*data)[idx[0]].y;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      const auto cx = clip_arc(ax, (*data)[idx[i]].x);
      if (!cx) return false;
      const auto cy = clip_arc(ay, (*data)[idx[i]].y);
      if (!cy) return false;
      ax = *cx;
      ay = *cy;
    }
    return true;
  };
}

mpz_class refinement_budget_nu0(int n, long long kappa) {
  if (n < 1 || kappa < 1) throw std::invalid_argument("refinement_budget_nu0: need n, kappa >= 1");
  mpz_class base = 4 * mpz_class(static_cast<long>(kappa)) + 1;
  mpz_class pow;
  mpz_pow_ui(pow.get_mpz_t(), base.get_mpz_t(),
             static_cast<unsigned long>(n) * static_cast<unsigned long>(kappa));
  mpz_class three_n;
  mpz_ui_pow_ui(three_n.get_mpz_t(), 3, static_cast<unsigned long>(n));
  return three_n * pow;
}

mpz_class refinement_budget_nu(long long lambda, const mpz_class& nu0) {
  if (lambda < 1) throw std::invalid_argument("refinement_budget_nu: need lambda >= 1");
  mpz_class two_lambda;
  mpz_ui_pow_ui(two_lambda.get_mpz_t(), 2, static_cast<unsigned long>(lambda));
  return mpz_class(static_cast<long>(lambda)) * two_lambda * nu0;
}

std::pair<mpz_class, mpz_class> refinement_budget(const ConstantsLedger& ledger) {
  return {ledger.nu0, ledger.nu};
}

std::pair<mpf_class, mpz_class> complexity_constants(const ConstantsLedger& ledger) {
  const mpf_class C = mpf_class(ledger.nu, 256) /
                      mpf_class(euclidean_ball_volume(ledger.n, ledger.r / 4.0), 256);
  const mpz_class D = ledger.nu * mpz_class(static_cast<long>(ledger.lambda));
  return {C, D};
}

bool DCReport::pass() const {
  if (!vertices_ok || !degree_ok) return false;
  for (const auto& row : counts)
    if (!row.ok) return false;
  return true;
}

DCReport check_dc(const NerveComplex& complex, double degree_bound, double vertex_bound) {
  DCReport report;
  report.vertex_count = complex.vertex_count;
  report.vertex_bound = vertex_bound;
  report.vertices_ok = static_cast<double>(report.vertex_count) <= vertex_bound;
  const auto degrees = complex.vertex_degrees();
  report.max_degree = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  report.degree_bound = degree_bound;
  report.degree_ok = static_cast<double>(report.max_degree) <= degree_bound;
  for (int k = 0; k <= complex.dim(); ++k) {
    const double bound = std::pow(degree_bound, k) * vertex_bound;
    const std::size_t count = complex.count(k);
    report.counts.push_back({k, count, bound, static_cast<double>(count) <= bound});
  }
  return report;
}

}  // namespace viscomp

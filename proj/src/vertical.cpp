// Copyright 2026 The Squash Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "squash/vertical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "point_grid.hpp"

namespace squash {
namespace {

Point weighted_point(std::span<const Point> pts, const std::vector<double>& w) {
  Point x = Point::Zero();
  for (size_t i = 0; i < pts.size(); ++i) x += w[i] * pts[i];
  return x;
}

double angle_at(const Flat& aff, std::span<const Point> pts, const std::vector<double>& w,
                const AnalyticManifold& M) {
  const Point x = weighted_point(pts, w);
  if (!M.infinite_reach() && M.distance(x) >= M.reach())
    throw OutsideTube();
  const Point m = M.project(x);
  return angle_between_flats(aff, M.tangent_flat(m));
}

// Enumerates barycentric weight vectors c/N over k+1 vertices.
void barycentric_grid(int k, int N, std::vector<std::vector<double>>& out) {
  std::vector<int> c(k + 1, 0);
  c[0] = N;
  for (;;) {
    std::vector<double> w(k + 1);
    for (int i = 0; i <= k; ++i) w[i] = static_cast<double>(c[i]) / N;
    out.push_back(std::move(w));
    // Next composition of N into k+1 parts (colex).
    int i = 0;
    while (i < k && c[i] == 0) ++i;
    if (i == k) break;
    const int v = c[i];
    c[i] = 0;
    c[0] = v - 1;
    ++c[i + 1];
  }
}

// Pattern search over the barycentric simplex from a start point.
template <typename Better>
double refine(const Flat& aff, std::span<const Point> pts, const AnalyticManifold& M,
              std::vector<double> w, double best, Better better, double step_floor) {
  const int k = static_cast<int>(pts.size()) - 1;
  double step = 0.25;
  while (step > step_floor) {
    bool improved = false;
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        if (i == j) continue;
        const double t = std::min(step, w[i]);
        if (t <= 0) continue;
        std::vector<double> w2 = w;
        w2[i] -= t;
        w2[j] += t;
        const double a = angle_at(aff, pts, w2, M);
        if (better(a, best)) {
          best = a;
          w = std::move(w2);
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

AngleRange angle_range_over_support(std::span<const Point> simplex,
                                    const AnalyticManifold& M,
                                    double refine_step_floor) {
  AngleRange r;
  const int k = static_cast<int>(simplex.size()) - 1;
  if (k < 0) throw TooFewPoints();
  if (k == 0) {
    r.argmin = r.argmax = simplex[0];
    return r;
  }
  const Flat aff = Flat::affine_hull(simplex);
  std::vector<std::vector<double>> grid;
  barycentric_grid(k, 3, grid);
  double lo = M_PI, hi = -1.0;
  std::vector<double> wlo, whi;
  for (const auto& w : grid) {
    const double a = angle_at(aff, simplex, w, M);
    if (a < lo) {
      lo = a;
      wlo = w;
    }
    if (a > hi) {
      hi = a;
      whi = w;
    }
  }
  const auto less = [](double a, double b) { return a < b - 1e-15; };
  const auto greater = [](double a, double b) { return a > b + 1e-15; };
  r.min_angle = refine(aff, simplex, M, wlo, lo, less, refine_step_floor);
  r.max_angle = refine(aff, simplex, M, whi, hi, greater, refine_step_floor);
  r.argmin = weighted_point(simplex, wlo);
  r.argmax = weighted_point(simplex, whi);
  return r;
}

bool is_vertical(std::span<const Point> simplex, const AnalyticManifold& M) {
  if (simplex.size() <= 1) return false;
  // A full-dimensional simplex always spans the normal direction.
  if (static_cast<int>(simplex.size()) - 1 >= M.ambient_dim()) return true;
  const AngleRange r = angle_range_over_support(simplex, M);
  return r.max_angle >= M_PI / 2 - tolerances().near_vertical;
}

namespace {

// Outward unit normal of the facet of sigma opposite to the vertex `opp`,
// within the ambient space of K.
Vec outward_facet_normal(const SimplicialComplex& K, const std::vector<Point>& facet_pts,
                         const Point& opp) {
  const int d = K.ambient_dim();
  Vec n;
  if (d == 2) {
    const Vec e = facet_pts[1] - facet_pts[0];
    if (e.norm() < tolerances().degenerate) throw DegenerateSimplex();
    n = Vec(-e.y(), e.x(), 0.0).normalized();
  } else {
    const Vec a = facet_pts[1] - facet_pts[0];
    const Vec b = facet_pts[2] - facet_pts[0];
    n = a.cross(b);
    if (n.norm() < tolerances().degenerate * std::max(1.0, a.norm() * b.norm()))
      throw DegenerateSimplex();
    n.normalize();
  }
  if (n.dot(opp - facet_pts[0]) > 0) n = -n;
  return n;
}

FacetSide side_of_facet(const SimplicialComplex& K, const std::vector<Point>& facet_pts,
                        const Point& opp, const AnalyticManifold& M) {
  const Vec n = outward_facet_normal(K, facet_pts, opp);
  Point bary = Point::Zero();
  for (const Point& p : facet_pts) bary += p;
  bary /= static_cast<double>(facet_pts.size());
  const double s = n.dot(M.normal(M.project(bary)));
  if (std::fabs(s) <= tolerances().near_vertical)
    throw VerticalFacet("near-vertical facet");
  return s > 0 ? FacetSide::Upper : FacetSide::Lower;
}

}  // namespace

std::map<Simplex, FacetSide> facet_sides(const SimplicialComplex& K,
                                         const Simplex& sigma,
                                         const AnalyticManifold& M) {
  const int d = K.ambient_dim();
  if (static_cast<int>(sigma.size()) != d + 1)
    throw GeometryError("facet_sides requires a full-dimensional simplex");
  const std::vector<Point> pts = K.points_of(sigma);
  std::map<Simplex, FacetSide> out;
  for (size_t drop = 0; drop < sigma.size(); ++drop) {
    Simplex facet;
    std::vector<Point> fp;
    for (size_t i = 0; i < sigma.size(); ++i)
      if (i != drop) {
        facet.push_back(sigma[i]);
        fp.push_back(pts[i]);
      }
    out.emplace(std::move(facet), side_of_facet(K, fp, pts[drop], M));
  }
  return out;
}

bool below(const SimplicialComplex& K, const Simplex& sigma0, const Simplex& sigma1,
           const Simplex& nu, const AnalyticManifold& M) {
  const FacetSide s0 = facet_sides(K, sigma0, M).at(nu);
  const FacetSide s1 = facet_sides(K, sigma1, M).at(nu);
  if (s0 == s1) throw GeometryError("shared facet with equal sides");
  return s0 == FacetSide::Upper;
}

DualGraph build_dual_graph(const SimplicialComplex& K, const AnalyticManifold& M) {
  const int d = K.ambient_dim();
  DualGraph G;
  std::map<Simplex, std::map<Simplex, FacetSide>> sides;
  for (const Simplex& s : K.simplices(d)) {
    G.nodes.push_back(s);
    const std::vector<Point> pts = K.points_of(s);
    G.altitude[s] = M.side(circumsphere(pts).center);
    try {
      sides[s] = facet_sides(K, s, M);
    } catch (const VerticalFacet&) {
      throw VerticalFacet("vertical facet in " + simplex_to_string(s));
    }
  }
  for (const Simplex& nu : K.simplices(d - 1)) {
    const std::vector<Simplex> cof = K.immediate_cofaces(nu);
    if (cof.size() != 2) continue;
    const FacetSide s0 = sides.at(cof[0]).at(nu);
    const FacetSide s1 = sides.at(cof[1]).at(nu);
    if (s0 == s1) throw GeometryError("shared facet with equal sides");
    if (s0 == FacetSide::Upper)
      G.arcs.push_back({cof[0], cof[1], nu});
    else
      G.arcs.push_back({cof[1], cof[0], nu});
  }
  return G;
}

void write_dual_graph_dot(const DualGraph& G, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << "digraph dual {\n";
  auto name = [](const Simplex& s) {
    std::string n = "s";
    for (VertexId v : s) n += "_" + std::to_string(v);
    return n;
  };
  for (const Simplex& s : G.nodes)
    out << "  " << name(s) << " [label=\"" << simplex_to_string(s)
        << "\\nalt=" << G.altitude.at(s) << "\"];\n";
  for (const DualArc& a : G.arcs)
    out << "  " << name(a.from) << " -> " << name(a.to) << " [label=\""
        << simplex_to_string(a.facet) << "\"];\n";
  out << "}\n";
}

std::optional<VerticallyFree> vertically_free(const SimplicialComplex& K,
                                              const Simplex& tau,
                                              const AnalyticManifold& ref) {
  const int d = K.ambient_dim();
  const std::optional<Simplex> max = K.is_free(tau);
  if (!max || static_cast<int>(max->size()) != d + 1) return std::nullopt;
  std::map<Simplex, FacetSide> sides;
  try {
    sides = facet_sides(K, *max, ref);
  } catch (const GeometryError&) {
    return std::nullopt;
  }
  std::set<Simplex> star_facets;
  for (const Simplex& s : K.star(tau))
    if (static_cast<int>(s.size()) == d) star_facets.insert(s);
  std::set<Simplex> above, below_set;
  for (const auto& [f, side] : sides)
    (side == FacetSide::Upper ? above : below_set).insert(f);
  if (star_facets == above) return VerticallyFree{FreeSide::FromAbove, *max};
  if (star_facets == below_set) return VerticallyFree{FreeSide::FromBelow, *max};
  return std::nullopt;
}

Skins skins_and_subcomplexes(const SimplicialComplex& K, const AnalyticManifold& M) {
  const int d = K.ambient_dim();
  Skins skins;
  skins.upper = SimplicialComplex(d, K.coords());
  skins.lower = SimplicialComplex(d, K.coords());
  std::map<Simplex, std::map<Simplex, FacetSide>> sides;
  for (const Simplex& nu : K.simplices(d - 1)) {
    const std::vector<Simplex> cof = K.immediate_cofaces(nu);
    if (cof.size() == 2) continue;
    if (cof.empty()) {
      skins.upper.insert_closure(nu);
      skins.lower.insert_closure(nu);
      skins.both.push_back(nu);
      continue;
    }
    auto it = sides.find(cof[0]);
    if (it == sides.end()) it = sides.emplace(cof[0], facet_sides(K, cof[0], M)).first;
    if (it->second.at(nu) == FacetSide::Upper)
      skins.upper.insert_closure(nu);
    else
      skins.lower.insert_closure(nu);
  }
  return skins;
}

namespace {

using Interval = std::pair<double, double>;

// Counts connected components of a set of closed intervals after merging
// overlaps up to `tol`.
size_t merge_count(std::vector<Interval>& iv, double tol) {
  if (iv.empty()) return 0;
  std::sort(iv.begin(), iv.end());
  size_t count = 1;
  double hi = iv[0].second;
  for (size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].first > hi + tol) {
      ++count;
      hi = iv[i].second;
    } else {
      hi = std::max(hi, iv[i].second);
    }
  }
  return count;
}

// Parameter interval of {t : m + t n in Conv(pts)} for a full-dimensional
// simplex; empty when the line misses it.
std::optional<Interval> segment_cell(const Point& m, const Vec& n,
                                     const std::vector<Point>& pts, int d, double T) {
  Eigen::MatrixXd E(3, d);
  for (int i = 0; i < d; ++i) E.col(i) = pts[i + 1] - pts[0];
  Eigen::MatrixXd Ed = E.topRows(d);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Ed);
  if (lu.rank() < d) return std::nullopt;
  const Eigen::VectorXd A = lu.solve((m - pts[0]).head(d));
  const Eigen::VectorXd B = lu.solve(n.head(d));
  double lo = -T, hi = T;
  // Constraints: lambda_i(t) >= 0 and 1 - sum lambda(t) >= 0.
  auto clip = [&](double a, double b) {  // a + b t >= 0
    const double tol = 1e-12;
    if (std::fabs(b) < tol) {
      if (a < -tol) lo = 1, hi = 0;
      return;
    }
    const double t = -a / b;
    if (b > 0)
      lo = std::max(lo, t);
    else
      hi = std::min(hi, t);
  };
  for (int i = 0; i < d; ++i) clip(A(i), B(i));
  clip(1.0 - A.sum(), -B.sum());
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

// Degenerate interval where the line crosses a (d-1)-simplex.
std::optional<Interval> segment_facet(const Point& m, const Vec& n,
                                      const std::vector<Point>& pts, int d, double T) {
  Vec fn;
  if (d == 2) {
    const Vec e = pts[1] - pts[0];
    fn = Vec(-e.y(), e.x(), 0.0);
  } else {
    fn = (pts[1] - pts[0]).cross(pts[2] - pts[0]);
  }
  const double denom = fn.dot(n);
  if (std::fabs(denom) < 1e-12 * std::max(1.0, fn.norm())) return std::nullopt;
  const double t = fn.dot(pts[0] - m) / denom;
  if (std::fabs(t) > T) return std::nullopt;
  const Point x = m + t * n;
  // Barycentric membership with a small slack.
  Eigen::MatrixXd E(3, d - 1);
  for (int i = 0; i < d - 1; ++i) E.col(i) = pts[i + 1] - pts[0];
  const Eigen::VectorXd w =
      (E.transpose() * E).ldlt().solve(E.transpose() * (x - pts[0]));
  double sum = 0;
  for (int i = 0; i < d - 1; ++i) {
    if (w(i) < -1e-9) return std::nullopt;
    sum += w(i);
  }
  if (sum > 1 + 1e-9) return std::nullopt;
  return Interval{t, t};
}

std::vector<Point> convexity_witnesses(const AnalyticManifold& M, double spacing,
                                       const std::vector<Point>& set_points) {
  if (M.kind() != ManifoldKind::Plane) return M.witness_grid(spacing);
  // Planes have no global grid; cover the projected extent of the set.
  const Flat H = M.tangent_flat(M.project(set_points.front()));
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  const int k = static_cast<int>(H.basis.cols());
  for (const Point& p : set_points) {
    const Eigen::VectorXd c = H.basis.transpose() * (M.project(p) - H.base);
    for (int i = 0; i < k; ++i) {
      lo[i] = std::min(lo[i], c(i));
      hi[i] = std::max(hi[i], c(i));
    }
  }
  std::vector<Point> out;
  if (k == 1) {
    for (double u = lo[0] - spacing; u <= hi[0] + spacing; u += spacing)
      out.push_back(H.base + u * H.basis.col(0));
  } else {
    for (double u = lo[0] - spacing; u <= hi[0] + spacing; u += spacing)
      for (double v = lo[1] - spacing; v <= hi[1] + spacing; v += spacing)
        out.push_back(H.base + u * H.basis.col(0) + v * H.basis.col(1));
  }
  return out;
}

}  // namespace

VerticalConvexityReport verify_vertical_convexity(const SimplicialComplex& K,
                                                  const AnalyticManifold& M,
                                                  double grid_spacing) {
  const int d = K.ambient_dim();
  VerticalConvexityReport rep;
  if (K.empty()) {
    rep.covering = false;
    return rep;
  }
  double r_measured = 0;
  for (const Point& p : K.coords()) r_measured = std::max(r_measured, M.distance(p));
  const double T = M.infinite_reach() ? r_measured + grid_spacing
                                      : std::min(0.99 * M.reach(), r_measured + grid_spacing);

  std::vector<std::vector<Point>> cells, facets;
  for (const Simplex& s : K.simplices(d)) cells.push_back(K.points_of(s));
  for (const Simplex& s : K.simplices(d - 1))
    if (K.immediate_cofaces(s).empty()) facets.push_back(K.points_of(s));

  const std::vector<Point> grid = convexity_witnesses(M, grid_spacing, K.coords());
  rep.grid_points = grid.size();
  const double tol = tolerances().witness * (1.0 + T);
  for (const Point& m : grid) {
    const Vec n = M.normal(m);
    std::vector<Interval> iv;
    for (const auto& pts : cells)
      if (auto seg = segment_cell(m, n, pts, d, T)) iv.push_back(*seg);
    for (const auto& pts : facets)
      if (auto seg = segment_facet(m, n, pts, d, T)) iv.push_back(*seg);
    const size_t comp = merge_count(iv, tol);
    if (comp >= 1) {
      ++rep.covered;
      for (const Interval& i : iv)
        rep.max_height = std::max({rep.max_height, std::fabs(i.first), std::fabs(i.second)});
    }
    if (comp >= 2) {
      rep.vertically_convex = false;
      rep.violations.push_back(m);
    }
  }
  rep.covering = rep.covered == rep.grid_points;
  return rep;
}

VerticalConvexityReport verify_vertical_convexity(const PointCloud& P, double alpha,
                                                  const AnalyticManifold& M,
                                                  double grid_spacing) {
  VerticalConvexityReport rep;
  if (P.points.empty()) return rep;
  double r_measured = 0;
  for (const Point& p : P.points) r_measured = std::max(r_measured, M.distance(p));
  r_measured += alpha;
  const double T = M.infinite_reach() ? r_measured + grid_spacing
                                      : std::min(0.99 * M.reach(), r_measured + grid_spacing);

  detail::IndexedPointGrid cloud(P.points, std::max((T + alpha) / 2, grid_spacing));
  const std::vector<Point> grid = convexity_witnesses(M, grid_spacing, P.points);
  rep.grid_points = grid.size();
  const double tol = tolerances().witness * (1.0 + T);
  for (const Point& m : grid) {
    const Vec n = M.normal(m);
    std::vector<Interval> iv;
    cloud.visit_ball(m, T + alpha, [&](std::uint32_t idx) {
      const Point& p = P.points[idx];
      const double b = n.dot(m - p);
      const double disc = b * b - ((m - p).squaredNorm() - alpha * alpha);
      if (disc >= 0) {
        const double s = std::sqrt(disc);
        iv.emplace_back(std::max(-b - s, -T), std::min(-b + s, T));
      }
      return true;
    });
    std::erase_if(iv, [](const Interval& i) { return i.first > i.second; });
    const size_t comp = merge_count(iv, tol);
    if (comp >= 1) {
      ++rep.covered;
      for (const Interval& i : iv)
        rep.max_height = std::max({rep.max_height, std::fabs(i.first), std::fabs(i.second)});
    }
    if (comp >= 2) {
      rep.vertically_convex = false;
      rep.violations.push_back(m);
    }
  }
  rep.covering = rep.covered == rep.grid_points;
  return rep;
}

}  // namespace squash

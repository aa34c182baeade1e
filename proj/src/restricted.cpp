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

#include "squash/restricted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "point_grid.hpp"

namespace squash {
namespace {

// Outward direction of the dual Voronoi ray of a boundary facet nu of
// sigma: normal to Aff(nu), pointing away from the opposite vertex.
Vec ray_direction(const std::vector<Point>& facet, const Point& opp, int d) {
  Vec n;
  if (d == 2) {
    const Vec e = facet[1] - facet[0];
    n = Vec(-e.y(), e.x(), 0.0);
  } else {
    n = (facet[1] - facet[0]).cross(facet[2] - facet[0]);
  }
  n.normalize();
  if (n.dot(opp - facet[0]) > 0) n = -n;
  return n;
}

// Bisection of alt along the segment [a, b] down to 1e-10, given opposite
// altitude signs at the endpoints.
Point bisect_crossing(const AnalyticManifold& M, Point a, Point b) {
  double fa = M.side(a);
  while ((b - a).norm() > 1e-10) {
    const Point mid = (a + b) / 2;
    const double fm = M.side(mid);
    if ((fa < 0) == (fm < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return (a + b) / 2;
}

}  // namespace

RestrictedComplex core_delaunay(const DelaunayComplex& D, const AnalyticManifold& M) {
  const SimplicialComplex& K = D.complex;
  const int d = D.dim;
  RestrictedComplex out;
  out.complex = SimplicialComplex(d, K.coords());

  std::map<Simplex, double> alt_at_center;
  const auto center_alt = [&](const Simplex& sigma) {
    auto it = alt_at_center.find(sigma);
    if (it != alt_at_center.end()) return it->second;
    const double a = M.side(circumsphere(K.points_of(sigma)).center);
    if (std::fabs(a) <= tolerances().genericity)
      throw GenericityViolated("Voronoi vertex of " + simplex_to_string(sigma) +
                               " lies on M");
    return alt_at_center.emplace(sigma, a).first->second;
  };

  const double clip = M.bounding_radius() + 3 * M.reach();
  for (const Simplex& nu : K.simplices(d - 1)) {
    std::vector<Simplex> cof = K.immediate_cofaces(nu);
    if (cof.empty()) continue;
    // Sliver cofaces have their circumcenter effectively at infinity, so
    // their end of the dual edge degrades to the clipped-ray treatment.
    const auto usable = [&](const Simplex& s) {
      try {
        center_alt(s);
        return true;
      } catch (const DegenerateSimplex&) {
        return false;
      }
    };
    if (cof.size() == 2 && !usable(cof[0])) std::swap(cof[0], cof[1]);
    if (!usable(cof[0])) continue;
    const Point z0 = circumsphere(K.points_of(cof[0])).center;
    Point a = z0, b;
    double fa = center_alt(cof[0]), fb;
    if (cof.size() == 2 && usable(cof[1])) {
      b = circumsphere(K.points_of(cof[1])).center;
      fb = center_alt(cof[1]);
    } else {
      // Unbounded (or quasi-unbounded) dual edge: ray from the
      // circumcenter, clipped far outside the manifold.
      const std::vector<Point> fp = K.points_of(nu);
      VertexId opp_id = 0;
      for (VertexId v : cof[0])
        if (std::find(nu.begin(), nu.end(), v) == nu.end()) opp_id = v;
      const Vec dir = ray_direction(fp, K.point(opp_id), d);
      b = z0 + dir * (clip + (z0.norm() > clip ? z0.norm() : 0.0));
      fb = M.side(b);
      if (std::fabs(fb) <= tolerances().genericity)
        throw GenericityViolated("clipped Voronoi ray endpoint of " +
                                 simplex_to_string(nu) + " lies on M");
    }
    if ((fa < 0) == (fb < 0)) continue;
    const Point w = bisect_crossing(M, a, b);
    out.complex.insert_closure(nu);
    out.witnesses[nu] = w;
  }
  out.purity = true;  // closure of the (d-1)-layer by construction
  return out;
}

RestrictedComplex restricted_delaunay(const DelaunayComplex& D, const AnalyticManifold& M,
                                      double grid_spacing) {
  const SimplicialComplex& K = D.complex;
  const int d = D.dim;
  RestrictedComplex out = core_delaunay(D, M);

  const std::vector<Point>& P = K.coords();
  if (grid_spacing <= 0) {
    // Sample spacing proxy: largest nearest-neighbor gap, about the
    // packing radius of the cloud.
    detail::IndexedPointGrid g(P, M.reach() / 4);
    double worst = 0;
    for (const Point& p : P) {
      double best = std::numeric_limits<double>::infinity();
      g.visit_ball(p, M.reach(), [&](std::uint32_t i) {
        const double d2 = (P[i] - p).squaredNorm();
        if (d2 > 1e-24) best = std::min(best, d2);
        return true;
      });
      if (std::isfinite(best)) worst = std::max(worst, std::sqrt(best));
    }
    grid_spacing = worst / 4;
  }

  detail::IndexedPointGrid grid(P, std::max(4 * grid_spacing, 1e-9));
  const double tie = tolerances().witness;
  for (const Point& m : M.witness_grid(grid_spacing)) {
    // Nearest-subset classification of m into a Voronoi cell.
    double best2 = std::numeric_limits<double>::infinity();
    grid.visit_ball(m, 12 * grid_spacing, [&](std::uint32_t i) {
      best2 = std::min(best2, (P[i] - m).squaredNorm());
      return true;
    });
    if (!std::isfinite(best2))
      for (const Point& p : P) best2 = std::min(best2, (p - m).squaredNorm());
    const double best = std::sqrt(best2);
    Simplex sigma;
    const double reach_r = best + 2 * tie;
    grid.visit_ball(m, reach_r + grid_spacing, [&](std::uint32_t i) {
      if ((P[i] - m).norm() <= best + tie) sigma.push_back(i);
      return true;
    });
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    if (sigma.empty()) continue;
    if (!out.complex.contains(sigma)) {
      out.complex.insert_closure(sigma);
      out.impure.push_back(sigma);
    }
    if (!out.witnesses.count(sigma)) out.witnesses[sigma] = m;
  }
  out.purity = out.impure.empty();
  return out;
}

RestrictedPipelineResult theorem28_pipeline(const PointCloud& P, const AnalyticManifold& M) {
  const DelaunayComplex D = delaunay(P, P.dim);
  RestrictedPipelineResult res;
  res.core = core_delaunay(D, M);
  res.restricted = restricted_delaunay(D, M);
  res.equal = res.core.complex.all_simplices() == res.restricted.complex.all_simplices();
  res.certificate = res.core.complex.certify_topology();
  return res;
}

}  // namespace squash

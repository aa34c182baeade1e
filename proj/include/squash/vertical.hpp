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

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "squash/complex.hpp"
#include "squash/manifold.hpp"
#include "squash/sampling.hpp"

namespace squash {

enum class FacetSide { Upper, Lower };
enum class FreeSide { FromAbove, FromBelow };

/// Extremal angles between Aff(simplex) and the tangent flats of M along
/// Conv(simplex), maximized/minimized over a barycentric grid with local
/// refinement.
struct AngleRange {
  double min_angle = 0.0;
  double max_angle = 0.0;
  Point argmin = Point::Zero();
  Point argmax = Point::Zero();
};

AngleRange angle_range_over_support(std::span<const Point> simplex,
                                    const AnalyticManifold& M,
                                    double refine_step_floor = 1e-6);

/// True iff two points of Conv(simplex) share a projection onto M,
/// detected as the support angle reaching pi/2.  Requires the support to
/// lie inside the reach tube (else OutsideTube).
bool is_vertical(std::span<const Point> simplex, const AnalyticManifold& M);

/// Upper/Lower label for every facet of a full-dimensional simplex of K,
/// by the sign of (outward facet normal) . (manifold normal at the
/// projected barycenter).  Throws VerticalFacet or DegenerateSimplex.
std::map<Simplex, FacetSide> facet_sides(const SimplicialComplex& K,
                                         const Simplex& sigma,
                                         const AnalyticManifold& M);

/// True iff sigma0 lies below sigma1 across their shared facet nu (nu is
/// an upper facet of sigma0 and a lower facet of sigma1).
bool below(const SimplicialComplex& K, const Simplex& sigma0, const Simplex& sigma1,
           const Simplex& nu, const AnalyticManifold& M);

struct DualArc {
  Simplex from;
  Simplex to;
  Simplex facet;
};

/// Directed dual graph over the full-dimensional simplices of K: one arc
/// per interior facet, oriented by the below relation; nodes annotated
/// with the altitude of the dual Voronoi vertex (circumcenter).
struct DualGraph {
  std::vector<Simplex> nodes;
  std::map<Simplex, double> altitude;
  std::vector<DualArc> arcs;
};

DualGraph build_dual_graph(const SimplicialComplex& K, const AnalyticManifold& M);

void write_dual_graph_dot(const DualGraph& G, const std::string& path);

/// Present iff tau is free with a full-dimensional maximal coface sigma
/// and the (d-1)-simplices of Star(tau) are exactly the upper (FromAbove)
/// or exactly the lower (FromBelow) facets of sigma relative to ref.
/// A hyperplane reference is passed as AnalyticManifold::plane.
struct VerticallyFree {
  FreeSide side;
  Simplex coface;
};

std::optional<VerticallyFree> vertically_free(const SimplicialComplex& K,
                                              const Simplex& tau,
                                              const AnalyticManifold& ref);

/// Boundary facets of K split by the facet side of their unique
/// full-dimensional coface; facets with no such coface (the collapsed
/// K = dK case) land in both skins and are listed separately.
struct Skins {
  SimplicialComplex upper;
  SimplicialComplex lower;
  std::vector<Simplex> both;
};

Skins skins_and_subcomplexes(const SimplicialComplex& K, const AnalyticManifold& M);

/// Numerical vertical-convexity verdict: for each witness point m on M the
/// normal segment is intersected with the set and the number of disjoint
/// parameter intervals counted; also reports covering-projection stats.
struct VerticalConvexityReport {
  bool vertically_convex = true;
  std::vector<Point> violations;   // witness points with >= 2 intervals
  size_t grid_points = 0;
  size_t covered = 0;              // witnesses whose segment meets the set
  bool covering = false;
  double max_height = 0.0;         // measured tube radius of the set
};

VerticalConvexityReport verify_vertical_convexity(const SimplicialComplex& K,
                                                  const AnalyticManifold& M,
                                                  double grid_spacing);
VerticalConvexityReport verify_vertical_convexity(const PointCloud& P, double alpha,
                                                  const AnalyticManifold& M,
                                                  double grid_spacing);

}  // namespace squash

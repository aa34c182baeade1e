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

#include "squash/delaunay.hpp"
#include "squash/manifold.hpp"

namespace squash {

/// Subcomplex of the Delaunay complex whose simplices have a Voronoi cell
/// meeting M; every included simplex stores the witness point found.
struct RestrictedComplex {
  SimplicialComplex complex;
  std::map<Simplex, Point> witnesses;
  bool purity = false;            // no simplex outside Cl of the (d-1)-layer
  std::vector<Simplex> impure;    // offending simplices when purity fails
};

/// Core complex: (d-1)-simplices whose dual Voronoi edge crosses M (sign
/// change of the altitude, located by bisection), plus all faces.
RestrictedComplex core_delaunay(const DelaunayComplex& D, const AnalyticManifold& M);

/// Full restricted complex: the core plus lower-dimensional simplices
/// whose Voronoi cell meets M, detected by witness-grid classification.
/// grid_spacing <= 0 derives a density from the sample spacing.
RestrictedComplex restricted_delaunay(const DelaunayComplex& D, const AnalyticManifold& M,
                                      double grid_spacing = 0.0);

struct RestrictedPipelineResult {
  RestrictedComplex core;
  RestrictedComplex restricted;
  bool equal = false;             // same simplex sets
  TopologyCertificate certificate;
};

RestrictedPipelineResult theorem28_pipeline(const PointCloud& P, const AnalyticManifold& M);

}  // namespace squash

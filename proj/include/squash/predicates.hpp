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

#include <span>

#include "squash/common.hpp"

namespace squash {

// Sign predicates.  The decision is exact: a double-precision evaluation with
// a conservative error bound is tried first and a rational-arithmetic
// evaluation settles the sign whenever the bound cannot.  Magnitudes are
// never exact, only signs.

/// Orientation of d+1 points in R^d (d = 2 or 3).  +1 for a right-handed
/// simplex, -1 for left-handed, 0 iff affinely degenerate.
int orient(std::span<const Point> simplex, int d);

/// Position of `query` relative to the circumsphere of `simplex` (d+1
/// points): +1 strictly inside, -1 strictly outside, 0 on the sphere.
/// Throws DegenerateSimplex when orient(simplex) == 0.
int in_sphere(std::span<const Point> simplex, const Point& query, int d);

// Symbolically perturbed variants.  Each point carries a global index (its
// insertion order); ties are broken by a simulation-of-simplicity scheme in
// which lower-indexed points receive larger infinitesimal perturbations.
// The perturbed predicates never return 0 for distinct points, and their
// answers are globally consistent (they are signs of determinants of one
// fixed perturbed point set).

/// Perturbed orientation: coordinate (g, j) of the point with global index g
/// is offset by an infinitesimal of rank g*d + j.
int sos_orient(std::span<const Point> simplex, std::span<const VertexId> indices, int d);

/// Perturbed in-sphere: the lifted (paraboloid) coordinate of point g is
/// offset by an infinitesimal weight of rank g; weights dominate the
/// coordinate perturbations, which resolve any remaining degeneracy.
int sos_in_sphere(std::span<const Point> simplex, std::span<const VertexId> indices, int d,
                  const Point& query, VertexId query_index);

}  // namespace squash

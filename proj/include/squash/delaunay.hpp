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
#include <string>

#include "squash/complex.hpp"
#include "squash/sampling.hpp"

namespace squash {

/// Full Delaunay complex; vertex ids are input-order indices into coords.
struct DelaunayComplex {
  int dim = 3;  // ambient d (2 or 3)
  SimplicialComplex complex;
};

/// Delaunay complex annotated with squared filtration values: alpha2(sigma)
/// is the square of the least r with V(sigma, P) meeting the r-offset of P.
struct AlphaComplex {
  int dim = 3;
  SimplicialComplex complex;
  std::map<Simplex, double> alpha2;
};

/// Incremental (Bowyer-Watson) Delaunay triangulation with exact,
/// symbolically perturbed predicates; deterministic for a fixed input order.
DelaunayComplex delaunay(const PointCloud& P, int d);

/// Filtration values: circumradius^2 for d-simplices; for lower simplices
/// the circumradius^2 when the circumsphere is empty (Gabriel), otherwise
/// the minimum over immediate cofaces.
AlphaComplex alpha_values(const DelaunayComplex& D);

/// Sublevel complex {sigma : alpha(sigma) <= alpha}.
SimplicialComplex alpha_complex(const AlphaComplex& A, double alpha);

/// Versioned binary cache and human-readable listing
/// (`simplex-dim vertex-ids alpha^2` per line).
void write_alpha_cache(const AlphaComplex& A, const std::string& path);
AlphaComplex read_alpha_cache(const std::string& path);
void write_alpha_listing(const AlphaComplex& A, const std::string& path);

}  // namespace squash

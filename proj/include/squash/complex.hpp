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
#include <set>
#include <string>
#include <vector>

#include "squash/geometry.hpp"

namespace squash {

/// Abstract simplex: sorted list of vertex ids.
using Simplex = std::vector<VertexId>;

Simplex make_simplex(std::initializer_list<VertexId> vs);
std::string simplex_to_string(const Simplex& s);

enum class SurfaceKind { Sphere, Torus, Circle, GenusG };

struct TopologyCertificate {
  bool is_closed_surface = false;
  long euler_characteristic = 0;
  int num_components = 0;
  bool orientable = false;
  bool vertex_links_ok = false;
  bool pure = false;
  int genus = -1;  // meaningful for connected orientable closed surfaces
  std::string failure;

  bool matches(SurfaceKind expected, int expected_genus = 0) const;
};

/// Mutable canonically embedded simplicial complex over points in R^d.
/// Construction is append-only (insert_closure); afterwards only deletions
/// happen, via collapse.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(int ambient_dim, std::vector<Point> coords);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Point>& coords() const { return coords_; }
  const Point& point(VertexId v) const { return coords_[v]; }
  std::vector<Point> points_of(const Simplex& s) const;

  void insert_closure(const Simplex& s);
  bool contains(const Simplex& s) const;
  /// Highest dimension with at least one simplex; -1 when empty.
  int top_dim() const;
  const std::set<Simplex>& simplices(int dim) const;
  size_t size() const;
  bool empty() const { return size() == 0; }

  /// Immediate (dimension +1) cofaces currently in the complex.
  std::vector<Simplex> immediate_cofaces(const Simplex& s) const;
  /// Star(tau): tau together with all its cofaces.  Throws SimplexNotFound.
  std::vector<Simplex> star(const Simplex& tau) const;
  /// Link(tau) = {eta : eta disjoint from tau, eta union tau in K}.
  std::vector<Simplex> link(const Simplex& tau) const;

  /// The unique inclusion-maximal proper coface when tau is free.
  std::optional<Simplex> is_free(const Simplex& tau) const;
  /// Removes Star(tau).  Throws NotFree when is_free(tau) is absent.
  void collapse(const Simplex& tau);

  /// (t-1)-simplices with a number of t-cofaces different from 2, where t is
  /// the top dimension.
  std::vector<Simplex> boundary_facets() const;
  /// Downward closure of boundary_facets() as a complex over the same points.
  SimplicialComplex boundary_complex() const;

  long euler_characteristic() const;
  int num_components() const;  // on the vertex-edge graph

  /// Closed-surface certification: purity, facet-coface counts, vertex
  /// links, orientability, Euler characteristic, components, genus.
  TopologyCertificate certify_topology() const;

  /// Checks dim(sigma) == dim(Aff sigma) for every simplex; for complexes
  /// with at most max_pairwise top simplices also checks that supports of
  /// top-simplex pairs intersect in shared-face supports (sampled test).
  bool verify_embedding(size_t max_pairwise = 64) const;

  const std::vector<Simplex>& deletion_log() const { return deletion_log_; }

  /// Ordered list of all simplices (dimension-major, lexicographic).
  std::vector<Simplex> all_simplices() const;

 private:
  void erase_simplex(const Simplex& s);

  int ambient_dim_ = 3;
  std::vector<Point> coords_;
  std::vector<std::set<Simplex>> by_dim_ = std::vector<std::set<Simplex>>(4);
  std::map<Simplex, std::vector<Simplex>> cofaces_;
  std::vector<Simplex> deletion_log_;
};

/// Mesh export for 2-complexes (triangles) and 1-complexes (edge list).
void write_off(const SimplicialComplex& K, const std::string& path);
void write_ply_mesh(const SimplicialComplex& K, const std::string& path);
void write_edge_list(const SimplicialComplex& K, const std::string& path);
SimplicialComplex read_off(const std::string& path);

}  // namespace squash

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

#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "squash/complex.hpp"

using namespace squash;

namespace {

// Two triangles sharing the edge {1, 2}.
SimplicialComplex two_triangles() {
  std::vector<Point> pts{Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(1, 1, 0)};
  SimplicialComplex K(2, pts);
  K.insert_closure(make_simplex({0, 1, 2}));
  K.insert_closure(make_simplex({1, 2, 3}));
  return K;
}

SimplicialComplex boundary_tetra() {
  std::vector<Point> pts{Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)};
  SimplicialComplex K(3, pts);
  K.insert_closure(make_simplex({0, 1, 2}));
  K.insert_closure(make_simplex({0, 1, 3}));
  K.insert_closure(make_simplex({0, 2, 3}));
  K.insert_closure(make_simplex({1, 2, 3}));
  return K;
}

SimplicialComplex octahedron() {
  std::vector<Point> pts{Point(1, 0, 0),  Point(-1, 0, 0), Point(0, 1, 0),
                         Point(0, -1, 0), Point(0, 0, 1),  Point(0, 0, -1)};
  SimplicialComplex K(3, pts);
  for (VertexId a : {0, 1})
    for (VertexId b : {2, 3})
      for (VertexId c : {4, 5}) {
        Simplex t{a, b, c};
        std::sort(t.begin(), t.end());
        K.insert_closure(t);
      }
  return K;
}

}  // namespace

TEST_CASE("insert_closure builds all faces") {
  SimplicialComplex K = two_triangles();
  CHECK(K.simplices(0).size() == 4);
  CHECK(K.simplices(1).size() == 5);
  CHECK(K.simplices(2).size() == 2);
  CHECK(K.contains(make_simplex({1, 2})));
  CHECK(!K.contains(make_simplex({0, 3})));
  CHECK(K.top_dim() == 2);
}

TEST_CASE("star and link") {
  SimplicialComplex K = two_triangles();
  const auto st = K.star(make_simplex({1, 2}));
  CHECK(st.size() == 3);  // the edge and both triangles
  const auto lk = K.link(make_simplex({1, 2}));
  REQUIRE(lk.size() == 2);  // vertices 0 and 3
  CHECK(std::count(lk.begin(), lk.end(), make_simplex({0})) == 1);
  CHECK(std::count(lk.begin(), lk.end(), make_simplex({3})) == 1);
  CHECK_THROWS_AS(K.star(make_simplex({0, 3})), SimplexNotFound);
}

TEST_CASE("free faces and collapse") {
  SimplicialComplex K = two_triangles();
  // Boundary edge {0, 1} has a unique top coface.
  const auto fr = K.is_free(make_simplex({0, 1}));
  REQUIRE(fr.has_value());
  CHECK(*fr == make_simplex({0, 1, 2}));
  // The shared edge has two cofaces, not free.
  CHECK(!K.is_free(make_simplex({1, 2})).has_value());
  CHECK_THROWS_AS(K.collapse(make_simplex({1, 2})), NotFree);
  const long chi = K.euler_characteristic();
  K.collapse(make_simplex({0, 1}));
  CHECK(!K.contains(make_simplex({0, 1, 2})));
  CHECK(!K.contains(make_simplex({0, 1})));
  CHECK(K.contains(make_simplex({0, 2})));
  CHECK(K.euler_characteristic() == chi);
  CHECK(K.deletion_log().size() == 2);
}

TEST_CASE("boundary facets") {
  SimplicialComplex K = two_triangles();
  const auto bd = K.boundary_facets();
  CHECK(bd.size() == 4);  // all edges except the shared one
  CHECK(std::count(bd.begin(), bd.end(), make_simplex({1, 2})) == 0);
  CHECK(boundary_tetra().boundary_facets().empty());
}

TEST_CASE("closed surface certificates") {
  const TopologyCertificate t = boundary_tetra().certify_topology();
  CHECK(t.is_closed_surface);
  CHECK(t.euler_characteristic == 2);
  CHECK(t.num_components == 1);
  CHECK(t.orientable);
  CHECK(t.genus == 0);
  CHECK(t.matches(SurfaceKind::Sphere));
  CHECK(!t.matches(SurfaceKind::Torus));

  const TopologyCertificate o = octahedron().certify_topology();
  CHECK(o.matches(SurfaceKind::Sphere));
  CHECK(o.euler_characteristic == 2);

  // Two triangles with a free edge: not a closed surface.
  const TopologyCertificate f = two_triangles().certify_topology();
  CHECK(!f.is_closed_surface);
  CHECK(!f.failure.empty());
}

TEST_CASE("embedding verification") {
  CHECK(two_triangles().verify_embedding());
  CHECK(boundary_tetra().verify_embedding());
  // Overlapping triangles in the plane: not embedded.
  std::vector<Point> pts{Point(0, 0, 0), Point(2, 0, 0), Point(1, 2, 0), Point(1, -1, 0),
                         Point(1, 1, 0)};
  SimplicialComplex bad(2, pts);
  bad.insert_closure(make_simplex({0, 1, 2}));
  bad.insert_closure(make_simplex({3, 4, 1}));
  CHECK(!bad.verify_embedding());
}

TEST_CASE("off round trip") {
  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "squash_rt.off").string();
  SimplicialComplex K = octahedron();
  write_off(K, path);
  const SimplicialComplex L = read_off(path);
  CHECK(L.all_simplices() == K.all_simplices());
  for (size_t i = 0; i < K.coords().size(); ++i)
    CHECK((L.coords()[i] - K.coords()[i]).norm() <= 1e-12);
  std::remove(path.c_str());
}

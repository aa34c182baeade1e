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

#include <cmath>

#include "squash/restricted.hpp"
#include "squash/sampling.hpp"

using namespace squash;

TEST_CASE("core of a circle sample is a polygon") {
  auto M = AnalyticManifold::circle(1);
  const PointCloud P = sample_manifold(M, SampleSpec{0.3, 0.0, 5});
  const DelaunayComplex D = delaunay(P, 2);
  const RestrictedComplex C = core_delaunay(D, M);
  CHECK(C.complex.simplices(1).size() == P.points.size());
  for (const Simplex& v : C.complex.simplices(0))
    CHECK(C.complex.immediate_cofaces(v).size() == 2);
  CHECK(C.complex.euler_characteristic() == 0);
  CHECK(C.purity);
}

TEST_CASE("core of a regular tetrahedron on its circumsphere") {
  const double h = 1.0 / std::sqrt(2.0);
  PointCloud P;
  P.dim = 3;
  P.points = {Point(1, 0, -h), Point(-1, 0, -h), Point(0, 1, h), Point(0, -1, h)};
  const double R = std::sqrt(3.0 / 2.0);  // circumradius of the side-2 tetra
  auto M = AnalyticManifold::sphere(R);
  const RestrictedComplex C = core_delaunay(delaunay(P, 3), M);
  CHECK(C.complex.simplices(2).size() == 4);
  CHECK(C.complex.certify_topology().matches(SurfaceKind::Sphere));
}

TEST_CASE("restricted witnesses lie on M") {
  auto M = AnalyticManifold::circle(1);
  const PointCloud P = sample_manifold(M, SampleSpec{0.3, 0.0, 5});
  const RestrictedComplex R = restricted_delaunay(delaunay(P, 2), M);
  CHECK(!R.witnesses.empty());
  for (const auto& [s, w] : R.witnesses) {
    CHECK(M.distance(w) <= 1e-9);
    // The witness is closest to exactly the vertices of s (up to ties).
    double dmin = 1e30;
    for (const Point& p : P.points) dmin = std::min(dmin, (w - p).norm());
    for (VertexId v : s) CHECK((w - P.points[v]).norm() <= dmin + 1e-6);
  }
}

TEST_CASE("pipeline equality and purity on circle and sphere") {
  {
    auto M = AnalyticManifold::circle(1);
    const PointCloud P = sample_manifold(M, SampleSpec{0.3, 0.0, 5});
    const RestrictedPipelineResult r = theorem28_pipeline(P, M);
    CHECK(r.equal);
    CHECK(r.restricted.purity);
    CHECK(r.certificate.matches(SurfaceKind::Circle));
  }
  {
    auto M = AnalyticManifold::sphere(1);
    const PointCloud P = sample_manifold(M, SampleSpec{0.35, 0.0, 11});
    const RestrictedPipelineResult r = theorem28_pipeline(P, M);
    CHECK(r.equal);
    CHECK(r.restricted.purity);
    CHECK(r.certificate.matches(SurfaceKind::Sphere));
    CHECK(r.certificate.euler_characteristic == 2);
  }
}

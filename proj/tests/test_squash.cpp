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
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "squash/squash.hpp"

using namespace squash;

namespace {

SimplicialComplex stacked_triangles() {
  std::vector<Point> pts{Point(0, 1, 0), Point(1, 1, 0), Point(0.5, 0.5, 0),
                         Point(0.5, 1.5, 0)};
  SimplicialComplex K(2, pts);
  K.insert_closure(make_simplex({0, 1, 2}));
  K.insert_closure(make_simplex({0, 1, 3}));
  return K;
}

}  // namespace

TEST_CASE("naive simplification collapses stacked triangles to an edge") {
  SimplicialComplex K = stacked_triangles();
  const auto ref = AnalyticManifold::plane(Point(0, 0, 0), Vec(0, 1, 0), 2);
  const SquashTrace t = naive_vertical_simplification(K, ref);
  CHECK(t.initial_top_count == 2);
  REQUIRE(t.steps.size() == 2);
  for (const CollapseStep& s : t.steps) CHECK(s.euler_after == s.euler_before);
  CHECK(K.simplices(2).empty());
  CHECK(K.simplices(1).size() == 1);
  CHECK(K.contains(make_simplex({0, 1})));
  CHECK(K.simplices(0).size() == 2);
}

TEST_CASE("practical simplification also terminates on stacked triangles") {
  SimplicialComplex K = stacked_triangles();
  const SquashTrace t = practical_vertical_simplification(K);
  CHECK(!t.terminal_summary.empty());
  for (const CollapseStep& s : t.steps) CHECK(s.euler_after == s.euler_before);
  CHECK(K.simplices(2).empty());
}

TEST_CASE("circle squash yields a single cycle") {
  auto M = AnalyticManifold::circle(1);
  const PointCloud P = sample_manifold(M, SampleSpec{0.3, 0.0, 5});
  const SquashResult r = naive_squash(P, 0.3, M);
  CHECK(r.certificate.matches(SurfaceKind::Circle));
  CHECK(r.certificate.num_components == 1);
  CHECK(r.complex.euler_characteristic() == 0);
  for (const Simplex& v : r.complex.simplices(0))
    CHECK(r.complex.immediate_cofaces(v).size() == 2);
  CHECK(!r.conditions.has_value());
}

TEST_CASE("alpha zero leaves only vertices") {
  auto M = AnalyticManifold::circle(1);
  const PointCloud P = sample_manifold(M, SampleSpec{0.3, 0.0, 5});
  const SquashResult r = naive_squash(P, 0.0, M);
  CHECK(r.complex.size() == P.points.size());
  CHECK(r.trace.steps.empty());
  CHECK(!r.certificate.is_closed_surface);
}

TEST_CASE("sphere squash variants agree on a co-spherical sample") {
  auto M = AnalyticManifold::sphere(1);
  const PointCloud P = sample_manifold(M, SampleSpec{0.2, 0.0, 7});
  const double alpha = 0.359;
  const SquashResult a = naive_squash(P, alpha, M);
  const SquashResult b = practical_squash(P, alpha, &M);
  const SquashResult c = non_crossing_squash(P, alpha, M);
  CHECK(a.certificate.matches(SurfaceKind::Sphere));
  CHECK(b.certificate.matches(SurfaceKind::Sphere));
  CHECK(c.certificate.matches(SurfaceKind::Sphere));
  CHECK(a.complex.all_simplices() == b.complex.all_simplices());
  CHECK(a.complex.all_simplices() == c.complex.all_simplices());
  CHECK(a.certificate.euler_characteristic == 2);
}

TEST_CASE("genericity violation when a voronoi vertex sits on M") {
  auto M = AnalyticManifold::circle(1);
  PointCloud P;
  P.dim = 2;
  for (double deg : {90.0, 210.0, 330.0}) {
    const double t = deg * M_PI / 180;
    P.points.emplace_back(1 + 0.1 * std::cos(t), 0.1 * std::sin(t), 0);
  }
  CHECK_THROWS_AS(non_crossing_squash(P, 10.0, M), GenericityViolated);
}

TEST_CASE("trace jsonl output") {
  namespace fs = std::filesystem;
  SimplicialComplex K = stacked_triangles();
  const auto ref = AnalyticManifold::plane(Point(0, 0, 0), Vec(0, 1, 0), 2);
  const SquashTrace t = naive_vertical_simplification(K, ref);
  const std::string path = (fs::temp_directory_path() / "squash_trace.jsonl").string();
  write_trace_jsonl(t, path);
  std::ifstream in(path);
  size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    CHECK(line.front() == '{');
    CHECK(line.back() == '}');
    ++lines;
  }
  CHECK(lines == t.steps.size() + 1);
  std::remove(path.c_str());
}

TEST_CASE("step observer sees every collapse") {
  SimplicialComplex K = stacked_triangles();
  const auto ref = AnalyticManifold::plane(Point(0, 0, 0), Vec(0, 1, 0), 2);
  size_t calls = 0;
  long last_size = -1;
  const SquashTrace t = naive_vertical_simplification(K, ref, [&](const SimplicialComplex& now,
                                                                  const CollapseStep&) {
    ++calls;
    last_size = (long)now.size();
  });
  CHECK(calls == t.steps.size());
  CHECK(last_size == (long)K.size());
}

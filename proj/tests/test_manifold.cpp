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

#include <random>

#include "squash/manifold.hpp"

using namespace squash;

TEST_CASE("sphere projection and heights") {
  auto M = AnalyticManifold::sphere(1);
  CHECK(M.project(Point(2, 0, 0)).isApprox(Point(1, 0, 0), 1e-12));
  CHECK(M.alt(Point(1.5, 0, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(M.alt(Point(0.5, 0, 0)) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(M.normal(Point(0, 0, 1)).isApprox(Vec(0, 0, 1), 1e-12));
  CHECK_THROWS_AS(M.project(Point(0, 0, 0)), NearMedialAxis);
  CHECK(M.side(Point(0, 0, 0)) == doctest::Approx(-1.0));
}

TEST_CASE("torus projection and normal") {
  auto M = AnalyticManifold::torus(3, 1);
  CHECK(M.project(Point(3, 0, 0.5)).isApprox(Point(3, 0, 1), 1e-12));
  CHECK(M.normal(Point(4, 0, 0)).isApprox(Vec(1, 0, 0), 1e-12));
  CHECK(M.reach() == doctest::Approx(1.0));
  Flat T = M.tangent_flat(Point(4, 0, 0));
  CHECK(std::fabs(T.basis.col(0).x()) + std::fabs(T.basis.col(1).x()) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("circle and plane") {
  auto C = AnalyticManifold::circle(2);
  CHECK(C.normal(Point(2, 0, 0)).isApprox(Vec(1, 0, 0), 1e-12));
  auto H = AnalyticManifold::plane(Point(0, 0, 0), Vec(0, 0, 1), 3);
  CHECK(H.alt(Point(3, 4, -2)) == doctest::Approx(-2.0));
  CHECK(H.infinite_reach());
}

TEST_CASE("partition property x = pi(x) + alt(x) n(pi(x))") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-1, 1);
  auto T = AnalyticManifold::torus(3, 1);
  for (int it = 0; it < 500; ++it) {
    const Point x(3 * U(rng), 3 * U(rng), U(rng));
    if (T.distance(x) >= 0.95) continue;
    Point m;
    try {
      m = T.project(x);
    } catch (const NearMedialAxis&) {
      continue;
    }
    CHECK((m + T.alt(x) * T.normal(m) - x).norm() <= 1e-10);
    CHECK(T.side(x) == doctest::Approx(T.alt(x)).epsilon(1e-9));
  }
}

TEST_CASE("projection is Lipschitz inside the tube") {
  auto M = AnalyticManifold::sphere(1);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> U(-1, 1);
  const double r = 0.5;
  for (int it = 0; it < 500; ++it) {
    Point x(U(rng), U(rng), U(rng)), y(U(rng), U(rng), U(rng));
    if (M.distance(x) > r || M.distance(y) > r) continue;
    CHECK((M.project(x) - M.project(y)).norm() <=
          1.0 / (1.0 - r) * (x - y).norm() + 1e-9);
  }
}

TEST_CASE("implicit manifold via expression matches analytic sphere") {
  auto f = parse_expression("x^2 + y^2 + z^2 - 1");
  auto M = AnalyticManifold::implicit(f, 1.0, 3);
  const Point p = M.project(Point(0.3, 0.4, 1.2));
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(M.normal(p).isApprox(p.normalized(), 1e-5));
  CHECK(M.side(Point(0.1, 0, 0)) < 0);
  CHECK(M.side(Point(2, 0, 0)) > 0);
}

TEST_CASE("manifold parse round trip") {
  auto M = AnalyticManifold::parse("torus R=3 r=1");
  CHECK(M.kind() == ManifoldKind::Torus);
  CHECK(M.bounding_radius() == doctest::Approx(4.0));
  auto C = AnalyticManifold::parse("circle r=2.5");
  CHECK(C.ambient_dim() == 2);
  CHECK(C.reach() == doctest::Approx(2.5));
  CHECK_THROWS_AS(AnalyticManifold::parse("cube r=1"), GeometryError);
  CHECK_THROWS_AS(AnalyticManifold::parse("sphere"), GeometryError);
}

TEST_CASE("witness grid density") {
  auto M = AnalyticManifold::sphere(1);
  const double spacing = 0.2;
  const auto grid = M.witness_grid(spacing);
  CHECK(grid.size() > 100);
  for (size_t i = 0; i < grid.size(); i += 17)
    CHECK(M.distance(grid[i]) <= 1e-9);
}

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
#include <vector>

#include "squash/geometry.hpp"
#include "squash/predicates.hpp"

using namespace squash;

namespace {

Point p2(double x, double y) { return Point(x, y, 0); }

Vec random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> N(0, 1);
  Vec v(N(rng), N(rng), N(rng));
  return v.normalized();
}

}  // namespace

TEST_CASE("orient signs") {
  std::vector<Point> right{p2(0, 0), p2(1, 0), p2(0, 1)};
  CHECK(orient(right, 2) == 1);
  std::vector<Point> collinear{p2(0, 0), p2(1, 0), p2(2, 0)};
  CHECK(orient(collinear, 2) == 0);
  std::vector<Point> left3{Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, -1)};
  CHECK(orient(left3, 3) == -1);
}

TEST_CASE("orient antisymmetry under odd permutations") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int it = 0; it < 200; ++it) {
    std::vector<Point> s{Point(U(rng), U(rng), U(rng)), Point(U(rng), U(rng), U(rng)),
                         Point(U(rng), U(rng), U(rng)), Point(U(rng), U(rng), U(rng))};
    const int before = orient(s, 3);
    std::swap(s[0], s[1]);
    CHECK(orient(s, 3) == -before);
  }
}

TEST_CASE("in_sphere on the unit right triangle") {
  std::vector<Point> tri{p2(0, 0), p2(1, 0), p2(0, 1)};
  CHECK(in_sphere(tri, p2(1, 1), 2) == 0);
  CHECK(in_sphere(tri, p2(0.5, 0.5), 2) == 1);
  CHECK(in_sphere(tri, p2(5, 5), 2) == -1);
}

TEST_CASE("in_sphere is invariant under vertex permutations") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int it = 0; it < 200; ++it) {
    std::vector<Point> s{Point(U(rng), U(rng), U(rng)), Point(U(rng), U(rng), U(rng)),
                         Point(U(rng), U(rng), U(rng)), Point(U(rng), U(rng), U(rng))};
    const Point q(U(rng), U(rng), U(rng));
    if (orient(s, 3) == 0) continue;
    const int before = in_sphere(s, q, 3);
    std::swap(s[1], s[2]);
    CHECK(in_sphere(s, q, 3) == before);
    const Sphere cs = circumsphere(s);
    const int direct = (q - cs.center).norm() < cs.radius ? 1 : -1;
    CHECK(before == direct);
  }
}

TEST_CASE("sos predicates never report degeneracy") {
  // Four cocircular points: plain in_sphere says 0, the perturbed one
  // decides, and swapping the simplex orientation flips the answer.
  std::vector<Point> tri{p2(0, 0), p2(1, 0), p2(1, 1)};
  std::vector<VertexId> idx{0, 1, 2};
  const int s = sos_in_sphere(tri, idx, 2, p2(0, 1), 3);
  CHECK(s != 0);
  CHECK(in_sphere(tri, p2(0, 1), 2) == 0);

  std::vector<Point> collinear{p2(0, 0), p2(1, 0), p2(2, 0)};
  CHECK(orient(collinear, 2) == 0);
  CHECK(sos_orient(collinear, idx, 2) != 0);
}

TEST_CASE("circumsphere closed forms") {
  std::vector<Point> seg{p2(0, 0), p2(2, 0)};
  Sphere s = circumsphere(seg);
  CHECK(s.center.isApprox(p2(1, 0), 1e-12));
  CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<Point> eq{p2(0, 0), p2(1, 0), p2(0.5, std::sqrt(3.0) / 2)};
  CHECK(circumsphere(eq).radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Point> tet{Point(1, 0, -h), Point(-1, 0, -h), Point(0, 1, h), Point(0, -1, h)};
  for (Point& p : tet) p /= std::sqrt(2.0);  // side sqrt(2) regular tetrahedron
  CHECK(circumsphere(tet).radius ==
        doctest::Approx(std::sqrt(2.0) * std::sqrt(3.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("circumsphere passes through every vertex") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int it = 0; it < 200; ++it) {
    const size_t k = 2 + it % 3;
    std::vector<Point> pts;
    for (size_t i = 0; i < k; ++i) pts.emplace_back(U(rng), U(rng), U(rng));
    try {
      const Sphere s = circumsphere(pts);
      for (const Point& p : pts)
        CHECK(std::fabs((p - s.center).norm() - s.radius) <= 1e-10 * std::max(1.0, s.radius));
    } catch (const DegenerateSimplex&) {
    }
  }
}

TEST_CASE("min enclosing sphere") {
  std::vector<Point> one{p2(0, 0)};
  CHECK(min_enclosing_sphere(one, 2).radius == doctest::Approx(0.0));
  std::vector<Point> two{p2(0, 0), p2(2, 0)};
  Sphere s = min_enclosing_sphere(two, 2);
  CHECK(s.center.isApprox(p2(1, 0), 1e-9));
  CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-9));
  // Obtuse triangle: supported by the longest edge only.
  std::vector<Point> obt{p2(0, 0), p2(4, 0), p2(1, 0.5)};
  s = min_enclosing_sphere(obt, 2);
  CHECK(s.center.isApprox(p2(2, 0), 1e-9));
  CHECK(s.radius == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("angle_between_flats basics") {
  Flat xy = Flat::hyperplane(Point::Zero(), Vec(0, 0, 1), 3);
  Flat zaxis = Flat::line(Point::Zero(), Vec(0, 0, 1));
  Flat xaxis = Flat::line(Point::Zero(), Vec(1, 0, 0));
  CHECK(angle_between_flats(xy, xy) == doctest::Approx(0.0));
  CHECK(angle_between_flats(zaxis, xy) == doctest::Approx(M_PI / 2));
  // Asymmetry: the plane contains a direction orthogonal to the line.
  CHECK(angle_between_flats(xy, xaxis) == doctest::Approx(M_PI / 2));
  CHECK(angle_between_flats(xaxis, xy) == doctest::Approx(0.0));
}

TEST_CASE("angle over hyperplanes containing V attains the flat angle") {
  // For lines U, V: angle(U, V) = max over hyperplanes H containing V of
  // angle(U, H); the maximum is attained at H = span(V, w) with w
  // orthogonal to both U and V.
  std::mt19937_64 rng(14);
  for (int it = 0; it < 20; ++it) {
    const Vec u = random_unit(rng), v = random_unit(rng);
    Flat U = Flat::line(Point::Zero(), u);
    Flat V = Flat::line(Point::Zero(), v);
    const double direct = angle_between_flats(U, V);
    double best = 0;
    for (int h = 0; h < 200; ++h) {
      Vec w = random_unit(rng);
      w -= w.dot(v) * v;
      if (w.norm() < 1e-6) continue;
      Flat H;
      H.base = Point::Zero();
      H.basis.resize(3, 2);
      H.basis.col(0) = v;
      H.basis.col(1) = w.normalized();
      best = std::max(best, angle_between_flats(U, H));
    }
    CHECK(best <= direct + 1e-9);
    Vec wstar = u.cross(v);
    if (wstar.norm() > 1e-6) {
      Flat H;
      H.base = Point::Zero();
      H.basis.resize(3, 2);
      H.basis.col(0) = v;
      H.basis.col(1) = wstar.normalized();
      CHECK(angle_between_flats(U, H) == doctest::Approx(direct).epsilon(1e-6));
    }
  }
}

TEST_CASE("zero dimensional flats") {
  Flat pt;
  pt.base = Point::Zero();
  pt.basis.resize(3, 0);
  Flat xy = Flat::hyperplane(Point::Zero(), Vec(0, 0, 1), 3);
  CHECK_THROWS_AS(angle_between_flats(pt, xy), ZeroDimFlat);
  CHECK(angle_between_flats(xy, pt) == doctest::Approx(M_PI / 2));
}

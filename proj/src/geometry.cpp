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

#include "squash/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace squash {

Flat Flat::line(const Point& base, const Vec& direction) {
  Flat f;
  f.base = base;
  f.basis.resize(3, 1);
  f.basis.col(0) = direction.normalized();
  return f;
}

Flat Flat::hyperplane(const Point& base, const Vec& normal, int ambient_dim) {
  Flat f;
  f.base = base;
  const Vec n = normal.normalized();
  if (ambient_dim == 2) {
    f.basis.resize(3, 1);
    f.basis.col(0) = Vec(-n.y(), n.x(), 0.0);
  } else {
    f.basis.resize(3, 2);
    Vec u = n.cross(std::fabs(n.x()) < 0.9 ? Vec::UnitX() : Vec::UnitY()).normalized();
    f.basis.col(0) = u;
    f.basis.col(1) = n.cross(u).normalized();
  }
  return f;
}

Flat Flat::affine_hull(std::span<const Point> points) {
  Flat f;
  f.base = points[0];
  const int k = static_cast<int>(points.size()) - 1;
  Eigen::Matrix<double, 3, Eigen::Dynamic> edges(3, k);
  for (int i = 0; i < k; ++i) edges.col(i) = points[i + 1] - points[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeThinU);
  const double scale = std::max(1.0, svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tolerances().degenerate * scale) ++rank;
  if (rank < k) throw DegenerateSimplex("affine hull has deficient rank");
  f.basis = svd.matrixU().leftCols(rank);
  return f;
}

Sphere circumsphere(std::span<const Point> points) {
  const int k = static_cast<int>(points.size()) - 1;
  if (k == 0) return Sphere{points[0], 0.0};
  Eigen::MatrixXd edges(3, k);
  for (int i = 0; i < k; ++i) edges.col(i) = points[i + 1] - points[0];
  // Center c = p0 + edges * y with 2 (E^T E) y = diag(E^T E).
  Eigen::MatrixXd gram = edges.transpose() * edges;
  Eigen::VectorXd rhs(k);
  for (int i = 0; i < k; ++i) rhs(i) = gram(i, i);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(2.0 * gram);
  if (lu.rank() < k) throw DegenerateSimplex("circumsphere of affinely dependent points");
  Eigen::VectorXd y = lu.solve(rhs);
  Sphere s;
  s.center = points[0] + edges * y;
  s.radius = (s.center - points[0]).norm();
  return s;
}

namespace {

// Smallest sphere with all of `support` on its boundary.
Sphere sphere_through(const std::vector<Point>& support) {
  if (support.empty()) return Sphere{Point::Zero(), -1.0};
  return circumsphere(support);
}

Sphere welzl(std::vector<Point>& pts, size_t n, std::vector<Point>& support, int d) {
  if (n == 0 || static_cast<int>(support.size()) == d + 1) return sphere_through(support);
  Sphere s = welzl(pts, n - 1, support, d);
  const Point& p = pts[n - 1];
  if (s.radius >= 0 && s.contains(p, 1e-12 * (1.0 + s.radius))) return s;
  support.push_back(p);
  s = welzl(pts, n - 1, support, d);
  support.pop_back();
  return s;
}

}  // namespace

Sphere min_enclosing_sphere(std::span<const Point> points, int d) {
  std::vector<Point> pts(points.begin(), points.end());
  std::mt19937_64 rng(0x5eed5eedULL);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Point> support;
  Sphere s = welzl(pts, pts.size(), support, d);
  if (s.radius < 0) s = Sphere{points[0], 0.0};
  return s;
}

double angle_between_flats(const Flat& U, const Flat& V) {
  if (U.dim() == 0) throw ZeroDimFlat();
  if (V.dim() == 0) return M_PI / 2;
  if (U.dim() > V.dim()) return M_PI / 2;
  Eigen::MatrixXd m = V.basis.transpose() * U.basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);  // = min over unit u of |proj_V u|
  smin = std::clamp(smin, 0.0, 1.0);
  return std::acos(smin);
}

}  // namespace squash

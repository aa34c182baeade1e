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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "squash/common.hpp"

namespace squash {

struct Sphere {
  Point center = Point::Zero();
  double radius = 0.0;

  bool contains(const Point& p, double slack = 0.0) const {
    return (p - center).norm() <= radius + slack;
  }
};

/// Affine flat: base point plus an orthonormal basis of its direction space.
/// dim == basis.cols(); a 0-dimensional flat is a point.
struct Flat {
  Point base = Point::Zero();
  Eigen::Matrix<double, 3, Eigen::Dynamic> basis;

  int dim() const { return static_cast<int>(basis.cols()); }

  static Flat line(const Point& base, const Vec& direction);
  static Flat hyperplane(const Point& base, const Vec& normal, int ambient_dim);
  /// Affine hull of a non-degenerate simplex.
  static Flat affine_hull(std::span<const Point> points);
};

/// Smallest sphere passing through every input point; its center lies in the
/// affine hull of the points.  Throws DegenerateSimplex for affinely
/// dependent inputs.
Sphere circumsphere(std::span<const Point> points);

/// Smallest enclosing sphere of a point set (Welzl recursion); unique radius.
Sphere min_enclosing_sphere(std::span<const Point> points, int d);

/// Asymmetric principal angle max_{u in U} min_{v in V} angle(u, v), in
/// [0, pi/2], via singular values of V_basis^T * U_basis.  Throws
/// ZeroDimFlat when dim U == 0; dim V == 0 gives pi/2.
double angle_between_flats(const Flat& U, const Flat& V);

}  // namespace squash

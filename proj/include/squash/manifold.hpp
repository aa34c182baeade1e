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

#include <functional>
#include <string>
#include <vector>

#include "squash/geometry.hpp"

namespace squash {

enum class ManifoldKind { Circle, Sphere, Torus, Plane, Implicit };

/// A smooth closed codimension-1 hypersurface with exact nearest-point
/// projection, an outward differentiable unit normal field, and a reach
/// lower bound R.  Ambient dimension is 2 or 3; 2-dimensional kinds keep
/// z identically zero.
class AnalyticManifold {
 public:
  static AnalyticManifold circle(double radius);
  static AnalyticManifold sphere(double radius);
  static AnalyticManifold torus(double major, double minor);
  static AnalyticManifold plane(const Point& base, const Vec& normal, int ambient_dim = 3);
  static AnalyticManifold implicit(std::function<double(const Point&)> level_set,
                                   double reach_lower_bound, int ambient_dim = 3);

  /// Parses the declarative format: `sphere r=1`, `circle r=1`,
  /// `torus R=3 r=1`, `plane n=0,0,1 p=0,0,0`, `implicit file=<path> R=<reach>`.
  static AnalyticManifold parse(const std::string& text);

  ManifoldKind kind() const { return kind_; }
  int ambient_dim() const { return dim_; }
  /// Reach lower bound R; a large sentinel for planes (see infinite_reach).
  double reach() const { return reach_; }
  bool infinite_reach() const { return infinite_reach_; }
  /// Radius of a ball around the origin containing M (compact kinds only).
  double bounding_radius() const;

  /// Nearest point on M.  Throws NearMedialAxis when x is (numerically) on
  /// the medial axis, or when the implicit Newton iteration fails.
  Point project(const Point& x) const;
  /// Outward unit normal at m; throws NotOnManifold when d(m,M) > 1e-9.
  Vec normal(const Point& m) const;
  /// Signed height alt(x) = (x - project(x)) . normal(project(x)).
  double alt(const Point& x) const;
  /// Signed side function: negative inside, positive outside, zero on M.
  /// Agrees with alt inside the reach tube but is defined on the whole
  /// ambient space, including the medial axis; the raw level value for
  /// implicit kinds.
  double side(const Point& x) const;
  /// Unsigned distance d(x, M).
  double distance(const Point& x) const;
  /// Tangent hyperplane at m (throws NotOnManifold).
  Flat tangent_flat(const Point& m) const;
  bool contains(const Point& m, double tol) const { return distance(m) <= tol; }

  /// Deterministic point grid on M with neighbor spacing at most `spacing`;
  /// compact kinds only.
  std::vector<Point> witness_grid(double spacing) const;

  /// The declarative text this manifold was built from (for report echoes).
  const std::string& description() const { return description_; }

 private:
  AnalyticManifold() = default;

  ManifoldKind kind_ = ManifoldKind::Sphere;
  int dim_ = 3;
  double reach_ = 1.0;
  bool infinite_reach_ = false;
  double radius_ = 1.0;        // circle/sphere
  double major_ = 3.0;         // torus
  double minor_ = 1.0;         // torus
  Point base_ = Point::Zero(); // plane
  Vec normal_ = Vec::UnitZ();  // plane
  std::function<double(const Point&)> level_;  // implicit
  std::string description_;
};

/// Compiles an arithmetic expression in x, y, z (operators + - * / ^,
/// functions sin cos tan sqrt exp log abs atan, constant pi) into a callable.
std::function<double(const Point&)> parse_expression(const std::string& text);

}  // namespace squash

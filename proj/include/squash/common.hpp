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

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace squash {

// All geometry lives in R^3; for ambient dimension d = 2 the z coordinate
// is identically zero and predicates dispatch on d.
using Vec = Eigen::Vector3d;
using Point = Eigen::Vector3d;

using VertexId = std::uint32_t;

/// Tolerance configuration shared across modules.  Values are absolute and
/// assume unit-scale geometry; callers working at other scales should
/// rescale or override.
struct Tolerances {
  double degenerate = 1e-10;      // affine degeneracy / zero-radius cutoffs
  double on_manifold = 1e-9;      // membership tests m in M
  double near_vertical = 1e-9;    // band around pi/2 for verticality warnings
  double genericity = 1e-9;       // |alt(Z(sigma))| below this violates genericity
  double witness = 1e-9;          // witness verification (alt at crossings, ...)
  double angle_grid_refine = 1e-12;  // golden-section termination
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSimplex : GeometryError {
  DegenerateSimplex() : GeometryError("degenerate simplex") {}
  explicit DegenerateSimplex(const std::string& m) : GeometryError(m) {}
};
struct ZeroDimFlat : GeometryError {
  ZeroDimFlat() : GeometryError("flat has dimension zero") {}
};
struct NearMedialAxis : GeometryError {
  NearMedialAxis() : GeometryError("point is at reach distance or beyond") {}
};
struct NotOnManifold : GeometryError {
  NotOnManifold() : GeometryError("point does not lie on the manifold") {}
};
struct OutsideTube : GeometryError {
  OutsideTube() : GeometryError("simplex support leaves the reach tube") {}
};
struct VerticalFacet : GeometryError {
  explicit VerticalFacet(const std::string& m) : GeometryError(m) {}
};
struct NotVerticallyConvex : GeometryError {
  explicit NotVerticallyConvex(const std::string& m) : GeometryError(m) {}
};
struct SimplexNotFound : GeometryError {
  SimplexNotFound() : GeometryError("simplex not in complex") {}
};
struct NotFree : GeometryError {
  NotFree() : GeometryError("simplex is not free") {}
};
struct TooFewPoints : GeometryError {
  TooFewPoints() : GeometryError("need at least d+1 points") {}
};
struct AllCoplanar : GeometryError {
  AllCoplanar() : GeometryError("input is affinely degenerate") {}
};
struct InfeasibleSpec : GeometryError {
  explicit InfeasibleSpec(const std::string& m) : GeometryError(m) {}
};
struct ImaginaryBeta : GeometryError {
  ImaginaryBeta() : GeometryError("beta radicand is negative") {}
};
struct BoundExceedsOne : GeometryError {
  BoundExceedsOne() : GeometryError("arcsin argument exceeds 1; simplex too large for reach") {}
};
struct GenericityViolated : GeometryError {
  explicit GenericityViolated(const std::string& m) : GeometryError(m) {}
};
struct StuckError : GeometryError {
  explicit StuckError(const std::string& m) : GeometryError(m) {}
};

}  // namespace squash

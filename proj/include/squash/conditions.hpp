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

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "squash/complex.hpp"
#include "squash/manifold.hpp"

namespace squash {

/// Sampling/scale parameters, all in the same length unit.
struct SamplingParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  // <= 0 means "derive from epsilon, alpha, R"
  double R = 1.0;
};

/// Two-branch density/noise gate; both branches are evaluated at
/// delta == epsilon and must agree there.
bool strict_homotopy(double epsilon, double delta, double R);

/// The valid alpha range [alpha_min, alpha_max]; absent when the strict
/// homotopy condition fails (or the discriminant is negative).
std::optional<std::pair<double, double>> interval_I(double epsilon, double delta,
                                                    double R);

/// Offset radius beta with M+beta inside P+alpha whenever M is inside
/// P+epsilon.  Throws ImaginaryBeta when the radicand is negative.
double beta_of(double epsilon, double alpha, double R);

/// arcsin(len / 2R): edge versus tangent flat, vertices on M.
double edge_angle_bound(double len, double R);

/// Triangle versus tangent flat at a vertex: arcsin(rho/R) for obtuse
/// triangles, arcsin(sqrt(3) rho/R) for acute ones; classification by the
/// angle opposite the longest edge.
double triangle_angle_bound(std::span<const Point> triangle, double R);

/// Max spread of angular deviations over the vertices: 2 arcsin(rho/R).
double angular_deviation_spread_bound(double rho, double R);

/// Hypothesis report for the four angle conditions on an alpha complex;
/// margins are (right-hand side minus measured), positive means satisfied.
struct ConditionReport {
  bool gate_ok = false;           // alpha within [delta, 2(R-delta)/3) and I
  std::string gate_failure;
  double beta = 0.0;

  bool c2_ok = false;  // max support angle of every i-simplex < pi/2
  bool c3_ok = false;  // min vertex angle below the beta-dependent arcsin
  bool c4_ok = false;  // min vertex angle of (d-1)-simplices below pi/2-2asin
  bool c5_ok = false;  // max vertex angle of (d-1)-simplices < pi/4

  double c2_margin = 0.0;
  double c3_margin = 0.0;
  double c4_margin = 0.0;       // gated on the vertex minimum
  double c4_margin_grid = 0.0;  // informational: support-grid minimum
  double c5_margin = 0.0;

  Simplex c2_binding, c3_binding, c4_binding, c5_binding;
};

ConditionReport check_theorem22_conditions(const SimplicialComplex& K,
                                           const AnalyticManifold& M,
                                           const SamplingParams& params);

/// Noiseless 3D feasibility of the (epsilon/R, alpha/R) pair.
bool naive_feasible(double eps_over_R, double alpha_over_R);
bool practical_feasible(double eps_over_R, double alpha_over_R);

/// Grid evaluation of both regions, written as CSV
/// `eps_over_R,alpha_over_R,naive_feasible,practical_feasible`.
void feasible_region_3d(int grid, const std::string& path);

/// 2 arcsin(e/2R) + arcsin(e/R) < pi/2 with e = epsilon.
bool purity_threshold_check(double epsilon, double R);
/// Root of the defining equality, as a ratio of R (about 0.732).
double purity_threshold();

}  // namespace squash

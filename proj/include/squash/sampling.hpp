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

#include <cstdint>
#include <string>
#include <vector>

#include "squash/manifold.hpp"

namespace squash {

struct SampleSpec {
  double epsilon = 0.1;  // density: M within epsilon of the cloud
  double delta = 0.0;    // noise: cloud within delta of M
  std::uint64_t seed = 0;
};

struct PointCloud {
  std::vector<Point> points;
  int dim = 3;
  std::string provenance = "external";
};

struct SampleReport {
  bool eps_ok = false;
  bool delta_ok = false;
  double measured_eps = 0.0;    // grid estimate plus grid-spacing slack
  double measured_delta = 0.0;  // exact max distance to M
};

/// Deterministic Poisson-disk-style sample of M with covering radius at most
/// epsilon/2 (certified on a witness grid), then uniform normal jitter in
/// [-delta, delta].  Identical spec and seed give identical output.
/// Throws InfeasibleSpec when the covering certificate fails.
PointCloud sample_manifold(const AnalyticManifold& M, const SampleSpec& spec);

/// Checks M within epsilon of P (witness grid at spacing epsilon/10, slack
/// added) and P within delta of M (exact distances).
SampleReport verify_sample(const PointCloud& P, const AnalyticManifold& M,
                           double epsilon, double delta);

PointCloud read_xyz(const std::string& path);
void write_xyz(const PointCloud& P, const std::string& path);
PointCloud read_ply_points(const std::string& path);
void write_ply_points(const PointCloud& P, const std::string& path);

}  // namespace squash

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
#include <optional>
#include <string>

#include "squash/conditions.hpp"
#include "squash/delaunay.hpp"
#include "squash/vertical.hpp"

namespace squash {

struct CollapseStep {
  Simplex tau;
  Simplex sigma;
  FreeSide side;
  long euler_before = 0;
  long euler_after = 0;
  std::string note;
};

struct SquashTrace {
  std::vector<CollapseStep> steps;
  size_t initial_top_count = 0;
  std::string terminal_summary;
};

/// Observer invoked after every collapse (snapshots, invariant checks).
using StepObserver = std::function<void(const SimplicialComplex&, const CollapseStep&)>;

/// Collapses vertically free simplices (relative to M) until none remain;
/// deterministic lowest-(dim, lexicographic) candidate selection.  Mutates K.
SquashTrace naive_vertical_simplification(SimplicialComplex& K, const AnalyticManifold& M,
                                          const StepObserver& on_step = {});

/// Same loop with the reference hyperplane H_tau spanned by the
/// lexicographically smallest facet of the free simplex's coface.
SquashTrace practical_vertical_simplification(SimplicialComplex& K,
                                              const StepObserver& on_step = {});

struct SquashResult {
  SimplicialComplex complex;
  SquashTrace trace;
  AlphaComplex alpha;                          // full filtration, for reuse
  std::optional<ConditionReport> conditions;   // present when M supplied
  TopologyCertificate certificate;
};

/// Del(P, alpha) followed by the corresponding simplification; the
/// hypothesis report is evaluated on the initial alpha complex when
/// sampling parameters are supplied.
SquashResult naive_squash(const PointCloud& P, double alpha, const AnalyticManifold& M,
                          const std::optional<SamplingParams>& params = std::nullopt,
                          const StepObserver& on_step = {});
SquashResult practical_squash(const PointCloud& P, double alpha,
                              const AnalyticManifold* M_for_verification = nullptr,
                              const std::optional<SamplingParams>& params = std::nullopt,
                              const StepObserver& on_step = {});

/// Sink/source driven collapse on the dual graph: sinks with positive
/// Voronoi-vertex altitude lose their upper-facet intersection, sources
/// with negative altitude their lower one.  Throws GenericityViolated when
/// an altitude is within tolerance of zero, StuckError when neither branch
/// applies on a non-empty graph.
SquashResult non_crossing_squash(const PointCloud& P, double alpha,
                                 const AnalyticManifold& M,
                                 const StepObserver& on_step = {});

/// One JSON object per line: steps, then a summary record.
void write_trace_jsonl(const SquashTrace& trace, const std::string& path);

}  // namespace squash

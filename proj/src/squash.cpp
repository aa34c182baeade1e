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

#include "squash/squash.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace squash {
namespace {

struct DimLex {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

void proper_faces(const Simplex& s, std::vector<Simplex>& out) {
  const int n = static_cast<int>(s.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    Simplex f;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) f.push_back(s[i]);
    out.push_back(std::move(f));
  }
}

// Hyperplane through the lexicographically smallest facet of sigma
// (its first d vertices, since ids are sorted).
AnalyticManifold facet_hyperplane(const SimplicialComplex& K, const Simplex& sigma) {
  const int d = K.ambient_dim();
  std::vector<Point> fp;
  for (int i = 0; i < d; ++i) fp.push_back(K.point(sigma[i]));
  Vec n;
  if (d == 2) {
    const Vec e = fp[1] - fp[0];
    n = Vec(-e.y(), e.x(), 0.0);
  } else {
    n = (fp[1] - fp[0]).cross(fp[2] - fp[0]);
  }
  if (n.norm() < tolerances().degenerate) throw DegenerateSimplex();
  return AnalyticManifold::plane(fp[0], n.normalized(), d);
}

using Check = std::function<std::optional<VerticallyFree>(const Simplex&)>;

SquashTrace run_simplification(SimplicialComplex& K, const Check& check,
                               const StepObserver& on_step,
                               const std::function<std::string(const Simplex&)>& note_of) {
  const int d = K.ambient_dim();
  SquashTrace trace;
  trace.initial_top_count = K.simplices(d).size();

  std::set<Simplex, DimLex> candidates;
  std::vector<Simplex> faces;
  auto seed_from = [&](const Simplex& sigma) {
    faces.clear();
    proper_faces(sigma, faces);
    for (const Simplex& tau : faces)
      if (check(tau)) candidates.insert(tau);
  };
  for (const Simplex& sigma : K.simplices(d)) seed_from(sigma);

  while (!candidates.empty()) {
    const Simplex tau = *candidates.begin();
    candidates.erase(candidates.begin());
    const auto vf = check(tau);
    if (!vf) continue;

    const std::vector<Simplex> removed = K.star(tau);
    CollapseStep step;
    step.tau = tau;
    step.sigma = vf->coface;
    step.side = vf->side;
    step.euler_before = K.euler_characteristic();
    if (note_of) step.note = note_of(vf->coface);
    K.collapse(tau);
    step.euler_after = K.euler_characteristic();
    if (on_step) on_step(K, step);
    trace.steps.push_back(std::move(step));

    std::set<VertexId> touched;
    for (const Simplex& s : removed) touched.insert(s.begin(), s.end());
    std::set<Simplex> affected;
    for (VertexId v : touched) {
      const Simplex vert{v};
      if (!K.contains(vert)) continue;
      for (const Simplex& s : K.star(vert))
        if (static_cast<int>(s.size()) == d + 1) affected.insert(s);
    }
    for (const Simplex& sigma : affected) seed_from(sigma);
  }

  std::ostringstream sum;
  sum << "collapses=" << trace.steps.size()
      << " remaining_top=" << K.simplices(d).size() << " size=" << K.size();
  trace.terminal_summary = sum.str();
  return trace;
}

}  // namespace

SquashTrace naive_vertical_simplification(SimplicialComplex& K, const AnalyticManifold& M,
                                          const StepObserver& on_step) {
  const auto check = [&](const Simplex& tau) -> std::optional<VerticallyFree> {
    if (!K.contains(tau)) return std::nullopt;
    return vertically_free(K, tau, M);
  };
  return run_simplification(K, check, on_step, {});
}

SquashTrace practical_vertical_simplification(SimplicialComplex& K,
                                              const StepObserver& on_step) {
  const int d = K.ambient_dim();
  const auto check = [&](const Simplex& tau) -> std::optional<VerticallyFree> {
    if (!K.contains(tau)) return std::nullopt;
    const std::optional<Simplex> max = K.is_free(tau);
    if (!max || static_cast<int>(max->size()) != d + 1) return std::nullopt;
    AnalyticManifold H = facet_hyperplane(K, *max);
    return vertically_free(K, tau, H);
  };
  const auto note_of = [&](const Simplex& sigma) -> std::string {
    // Facet angles relative to H straddling pi/4 mark steps where the
    // hyperplane surrogate may disagree with a manifold reference.
    AnalyticManifold H = facet_hyperplane(K, sigma);
    const Flat T = H.tangent_flat(H.project(K.point(sigma[0])));
    bool below_pi4 = false, above_pi4 = false;
    for (size_t drop = 0; drop < sigma.size(); ++drop) {
      std::vector<Point> fp;
      for (size_t i = 0; i < sigma.size(); ++i)
        if (i != drop) fp.push_back(K.point(sigma[i]));
      const double a = angle_between_flats(Flat::affine_hull(fp), T);
      (a < M_PI / 4 ? below_pi4 : above_pi4) = true;
    }
    return below_pi4 && above_pi4 ? "facet angles straddle pi/4" : "";
  };
  return run_simplification(K, check, on_step, note_of);
}

namespace {

SquashResult prepare(const PointCloud& P, double alpha) {
  SquashResult res;
  const DelaunayComplex D = delaunay(P, P.dim);
  res.alpha = alpha_values(D);
  res.complex = alpha_complex(res.alpha, alpha);
  return res;
}

}  // namespace

SquashResult naive_squash(const PointCloud& P, double alpha, const AnalyticManifold& M,
                          const std::optional<SamplingParams>& params,
                          const StepObserver& on_step) {
  SquashResult res = prepare(P, alpha);
  if (params) {
    SamplingParams p = *params;
    p.alpha = alpha;
    res.conditions = check_theorem22_conditions(res.complex, M, p);
  }
  res.trace = naive_vertical_simplification(res.complex, M, on_step);
  res.certificate = res.complex.certify_topology();
  return res;
}

SquashResult practical_squash(const PointCloud& P, double alpha,
                              const AnalyticManifold* M_for_verification,
                              const std::optional<SamplingParams>& params,
                              const StepObserver& on_step) {
  SquashResult res = prepare(P, alpha);
  if (params && M_for_verification) {
    SamplingParams p = *params;
    p.alpha = alpha;
    res.conditions = check_theorem22_conditions(res.complex, *M_for_verification, p);
  }
  res.trace = practical_vertical_simplification(res.complex, on_step);
  res.certificate = res.complex.certify_topology();
  return res;
}

SquashResult non_crossing_squash(const PointCloud& P, double alpha,
                                 const AnalyticManifold& M,
                                 const StepObserver& on_step) {
  SquashResult res = prepare(P, alpha);
  SimplicialComplex& K = res.complex;
  const int d = K.ambient_dim();
  SquashTrace& trace = res.trace;
  trace.initial_top_count = K.simplices(d).size();

  std::map<Simplex, std::map<Simplex, FacetSide>> sides;
  std::map<Simplex, double> altitude;
  for (const Simplex& sigma : K.simplices(d)) {
    sides[sigma] = facet_sides(K, sigma, M);
    const double alt = M.side(circumsphere(K.points_of(sigma)).center);
    if (std::fabs(alt) <= tolerances().genericity)
      throw GenericityViolated("Voronoi vertex of " + simplex_to_string(sigma) +
                               " lies on M");
    altitude[sigma] = alt;
  }

  // A node is a sink (source) when all its upper (lower) facets are
  // boundary; removals can only create eligibility, never destroy it.
  const auto eligible = [&](const Simplex& sigma, FacetSide open_side) {
    for (const auto& [nu, side] : sides.at(sigma)) {
      if (side != open_side) continue;
      if (K.immediate_cofaces(nu).size() > 1) return false;
    }
    return true;
  };

  std::set<Simplex> sinks, sources;
  for (const Simplex& sigma : K.simplices(d)) {
    if (altitude[sigma] > 0 && eligible(sigma, FacetSide::Upper)) sinks.insert(sigma);
    if (altitude[sigma] < 0 && eligible(sigma, FacetSide::Lower)) sources.insert(sigma);
  }

  while (!K.simplices(d).empty()) {
    Simplex sigma;
    FacetSide open_side;
    FreeSide side;
    for (;;) {
      if (!sinks.empty()) {
        sigma = *sinks.begin();
        sinks.erase(sinks.begin());
        if (!K.contains(sigma)) continue;
        open_side = FacetSide::Upper;
        side = FreeSide::FromAbove;
        break;
      }
      if (!sources.empty()) {
        sigma = *sources.begin();
        sources.erase(sources.begin());
        if (!K.contains(sigma)) continue;
        open_side = FacetSide::Lower;
        side = FreeSide::FromBelow;
        break;
      }
      throw StuckError("no sink above M nor source below M on a non-empty dual graph");
    }

    // tau = intersection of the open-side facets: the vertices whose
    // opposite facet lies on the other side.
    Simplex tau;
    std::map<Simplex, FacetSide>& ss = sides.at(sigma);
    for (size_t drop = 0; drop < sigma.size(); ++drop) {
      Simplex facet;
      for (size_t i = 0; i < sigma.size(); ++i)
        if (i != drop) facet.push_back(sigma[i]);
      if (ss.at(facet) != open_side) tau.push_back(sigma[drop]);
    }

    CollapseStep step;
    step.tau = tau;
    step.sigma = sigma;
    step.side = side;
    step.euler_before = K.euler_characteristic();
    try {
      K.collapse(tau);
    } catch (const NotFree&) {
      throw StuckError("collapse target " + simplex_to_string(tau) +
                       " of " + simplex_to_string(sigma) + " is not free");
    }
    step.euler_after = K.euler_characteristic();
    if (on_step) on_step(K, step);
    trace.steps.push_back(std::move(step));

    // Only neighbors across sigma's facets can gain eligibility.
    for (const auto& [nu, sside] : ss) {
      if (!K.contains(nu)) continue;
      for (const Simplex& nb : K.immediate_cofaces(nu)) {
        if (altitude[nb] > 0 && eligible(nb, FacetSide::Upper)) sinks.insert(nb);
        if (altitude[nb] < 0 && eligible(nb, FacetSide::Lower)) sources.insert(nb);
      }
    }
    sides.erase(sigma);
  }

  std::ostringstream sum;
  sum << "collapses=" << trace.steps.size() << " size=" << K.size();
  trace.terminal_summary = sum.str();
  res.certificate = K.certify_topology();
  return res;
}

void write_trace_jsonl(const SquashTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  for (const CollapseStep& s : trace.steps) {
    nlohmann::json j;
    j["tau"] = s.tau;
    j["sigma"] = s.sigma;
    j["side"] = s.side == FreeSide::FromAbove ? "above" : "below";
    j["euler_before"] = s.euler_before;
    j["euler_after"] = s.euler_after;
    if (!s.note.empty()) j["note"] = s.note;
    out << j.dump() << "\n";
  }
  nlohmann::json summary;
  summary["initial_top_count"] = trace.initial_top_count;
  summary["steps"] = trace.steps.size();
  summary["summary"] = trace.terminal_summary;
  out << summary.dump() << "\n";
}

}  // namespace squash

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

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "squash/report.hpp"
#include "squash/restricted.hpp"
#include "squash/sampling.hpp"
#include "squash/squash.hpp"

namespace {

using namespace squash;

constexpr int kExitIo = 1;
constexpr int kExitGate = 2;
constexpr int kExitInternal = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

PointCloud read_cloud(const std::string& path) {
  try {
    if (ends_with(path, ".ply")) return read_ply_points(path);
    return read_xyz(path);
  } catch (const std::exception& e) {
    throw IoError(std::string("cannot read point cloud ") + path + ": " + e.what());
  }
}

void write_cloud(const PointCloud& P, const std::string& path) {
  if (ends_with(path, ".ply"))
    write_ply_points(P, path);
  else
    write_xyz(P, path);
}

void write_mesh(const SimplicialComplex& K, const std::string& path) {
  if (ends_with(path, ".ply"))
    write_ply_mesh(K, path);
  else if (ends_with(path, ".txt"))
    write_edge_list(K, path);
  else
    write_off(K, path);
}

// Shared threshold options; ratios are relative to the reach bound R of
// the surface and are converted to absolutes exactly once.
struct Thresholds {
  double eps = -1, eps_ratio = -1;
  double delta = 0, delta_ratio = -1;
  double alpha = -1, alpha_ratio = -1;

  void add_to(CLI::App& cmd, bool with_alpha) {
    cmd.add_option("--eps", eps, "Sampling density epsilon (absolute)");
    cmd.add_option("--eps-ratio", eps_ratio, "epsilon as a ratio of R");
    cmd.add_option("--delta", delta, "Noise bound delta (absolute)");
    cmd.add_option("--delta-ratio", delta_ratio, "delta as a ratio of R");
    if (with_alpha) {
      cmd.add_option("--alpha", alpha, "Alpha-complex scale (absolute)");
      cmd.add_option("--alpha-ratio", alpha_ratio, "alpha as a ratio of R");
    }
  }

  void resolve(const std::optional<AnalyticManifold>& M) {
    const bool ratios = eps_ratio > 0 || delta_ratio > 0 || alpha_ratio > 0;
    if (ratios && !M) throw IoError("ratio thresholds require --surface");
    if (eps_ratio > 0) eps = eps_ratio * M->reach();
    if (delta_ratio > 0) delta = delta_ratio * M->reach();
    if (alpha_ratio > 0) alpha = alpha_ratio * M->reach();
  }
};

struct Common {
  std::string surface;
  std::uint64_t seed = 0;
  Thresholds th;
  std::optional<AnalyticManifold> M;

  void parse_surface() {
    if (surface.empty()) return;
    try {
      M = AnalyticManifold::parse(surface);
    } catch (const std::exception& e) {
      throw IoError(std::string("bad --surface: ") + e.what());
    }
    th.resolve(M);
  }
};

nlohmann::ordered_json config_echo(const Common& c, const std::string& command,
                                   const std::string& mode = "") {
  nlohmann::ordered_json j;
  j["command"] = command;
  if (!mode.empty()) j["mode"] = mode;
  if (!c.surface.empty()) j["surface"] = c.surface;
  j["seed"] = c.seed;
  j["epsilon"] = c.th.eps;
  j["delta"] = c.th.delta;
  if (c.th.alpha > 0) j["alpha"] = c.th.alpha;
  return j;
}

int cmd_sample(Common& c, const std::string& out) {
  c.parse_surface();
  if (!c.M) throw IoError("sample requires --surface");
  if (c.th.eps <= 0) throw IoError("sample requires --eps or --eps-ratio");
  const PointCloud P = sample_manifold(*c.M, {c.th.eps, c.th.delta, c.seed});
  write_cloud(P, out);
  std::cout << "wrote " << P.points.size() << " points to " << out << "\n";
  return 0;
}

int cmd_region(const std::string& mode, int grid, const std::string& out) {
  if (mode != "naive" && mode != "practical" && mode != "both")
    throw IoError("region --mode must be naive, practical, or both");
  feasible_region_3d(grid, out);
  std::cout << "wrote " << grid << "x" << grid << " region grid to " << out << "\n";
  return 0;
}

int finish_report(VerificationReport& rep, const std::string& report_path,
                  bool gate_failed) {
  if (!report_path.empty()) write_report(rep, report_path);
  std::cout << report_to_json(rep).dump(2) << "\n";
  return gate_failed ? kExitGate : 0;
}

int cmd_reconstruct(Common& c, const std::string& mode, const std::string& input,
                    const std::string& out, const std::string& trace_path,
                    const std::string& report_path, int snapshot_every,
                    const std::string& dump_dual) {
  c.parse_surface();
  if (mode != "practical" && !c.M)
    throw IoError("--surface is required for --mode " + mode);
  if (mode != "restricted" && c.th.alpha <= 0)
    throw IoError("reconstruct requires --alpha or --alpha-ratio");

  const double t0 = now_s();
  PointCloud P = read_cloud(input);
  VerificationReport rep;
  rep.config = config_echo(c, "reconstruct", mode);
  rep.config["input"] = input;
  rep.seed = c.seed;
  rep.timing_s["read"] = now_s() - t0;

  std::optional<SamplingParams> params;
  if (c.M && c.th.eps > 0 && mode != "restricted" && mode != "noncrossing")
    params = SamplingParams{c.th.eps, c.th.delta, c.th.alpha, 0.0, c.M->reach()};

  if (!dump_dual.empty()) {
    if (!c.M) throw IoError("--dump-dual requires --surface");
    const DelaunayComplex D = delaunay(P, P.dim);
    const SimplicialComplex K0 = alpha_complex(alpha_values(D), c.th.alpha);
    write_dual_graph_dot(build_dual_graph(K0, *c.M), dump_dual);
  }

  size_t snap_count = 0, step_count = 0;
  StepObserver observer;
  if (snapshot_every > 0)
    observer = [&](const SimplicialComplex& K, const CollapseStep&) {
      if (++step_count % static_cast<size_t>(snapshot_every) == 0)
        write_mesh(K, out + ".snap" + std::to_string(++snap_count) + ".off");
    };

  const double t1 = now_s();
  SquashResult res;
  bool gate_failed = false;
  if (mode == "naive") {
    res = naive_squash(P, c.th.alpha, *c.M, params, observer);
  } else if (mode == "practical") {
    res = practical_squash(P, c.th.alpha, c.M ? &*c.M : nullptr, params, observer);
  } else if (mode == "noncrossing") {
    res = non_crossing_squash(P, c.th.alpha, *c.M, observer);
  } else if (mode == "restricted") {
    const RestrictedPipelineResult rr = theorem28_pipeline(P, *c.M);
    res.complex = rr.core.complex;
    res.certificate = rr.certificate;
    res.trace.initial_top_count = rr.core.complex.simplices(P.dim - 1).size();
    res.trace.terminal_summary =
        std::string("restricted: core==restricted ") + (rr.equal ? "yes" : "no") +
        ", purity " + (rr.restricted.purity ? "yes" : "no");
    gate_failed = !rr.equal || !rr.restricted.purity;
  } else {
    throw IoError("unknown --mode " + mode);
  }
  rep.timing_s["reconstruct"] = now_s() - t1;

  rep.conditions = res.conditions;
  rep.certificate = res.certificate;
  rep.initial_top_count = res.trace.initial_top_count;
  rep.collapse_count = res.trace.steps.size();
  rep.trace_summary = res.trace.terminal_summary;
  if (res.conditions &&
      !(res.conditions->gate_ok && res.conditions->c2_ok && res.conditions->c3_ok &&
        res.conditions->c4_ok && (mode != "practical" || res.conditions->c5_ok)))
    gate_failed = true;

  if (!out.empty()) write_mesh(res.complex, out);
  if (!trace_path.empty()) write_trace_jsonl(res.trace, trace_path);
  rep.timing_s["total"] = now_s() - t0;
  return finish_report(rep, report_path, gate_failed);
}

int cmd_verify(Common& c, const std::string& input, const std::string& report_path) {
  c.parse_surface();
  if (!c.M) throw IoError("verify requires --surface");
  if (c.th.eps <= 0) throw IoError("verify requires --eps or --eps-ratio");

  const double t0 = now_s();
  PointCloud P = read_cloud(input);
  VerificationReport rep;
  rep.config = config_echo(c, "verify");
  rep.config["input"] = input;
  rep.seed = c.seed;

  const SampleReport sr = verify_sample(P, *c.M, c.th.eps, c.th.delta);
  bool gate_failed = !sr.eps_ok || !sr.delta_ok;
  std::string summary = std::string("sample: eps ") + (sr.eps_ok ? "ok" : "FAIL") +
                        " (measured " + std::to_string(sr.measured_eps) + "), delta " +
                        (sr.delta_ok ? "ok" : "FAIL") + " (measured " +
                        std::to_string(sr.measured_delta) + ")";

  if (c.th.alpha > 0) {
    const SimplicialComplex K = alpha_complex(alpha_values(delaunay(P, P.dim)), c.th.alpha);
    rep.initial_top_count = K.simplices(P.dim).size();
    rep.certificate = K.certify_topology();
    const SamplingParams params{c.th.eps, c.th.delta, c.th.alpha, 0.0, c.M->reach()};
    rep.conditions = check_theorem22_conditions(K, *c.M, params);
    if (!(rep.conditions->gate_ok && rep.conditions->c2_ok && rep.conditions->c3_ok &&
          rep.conditions->c4_ok))
      gate_failed = true;
    const VerticalConvexityReport vc = verify_vertical_convexity(K, *c.M, c.th.eps / 2);
    summary += vc.vertically_convex ? "; vertically convex" : "; NOT vertically convex";
  }
  rep.trace_summary = summary;
  rep.timing_s["total"] = now_s() - t0;
  return finish_report(rep, report_path, gate_failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manifold reconstruction by vertical collapse of alpha complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", squash::library_version());

  Common c;
  std::string input, out, mode = "naive", trace_path, report_path, dump_dual;
  std::string region_mode = "both";
  int grid = 400, snapshot_every = 0;

  CLI::App* sample = app.add_subcommand("sample", "Sample a surface into a point cloud");
  sample->add_option("--surface", c.surface, "Surface spec, e.g. \"sphere r=1\"")->required();
  sample->add_option("--seed", c.seed, "RNG seed");
  c.th.add_to(*sample, false);
  sample->add_option("-o,--output", out, "Output cloud (.xyz or .ply)")->required();

  CLI::App* rec = app.add_subcommand("reconstruct", "Reconstruct a mesh from a cloud");
  rec->add_option("-i,--input", input, "Input cloud (.xyz or .ply)")->required();
  rec->add_option("--mode", mode, "naive|practical|noncrossing|restricted");
  rec->add_option("--surface", c.surface, "Surface spec (optional for practical)");
  rec->add_option("--seed", c.seed, "Seed echoed into the report");
  c.th.add_to(*rec, true);
  rec->add_option("-o,--output", out, "Output mesh (.off, .ply, or .txt edges)");
  rec->add_option("--trace", trace_path, "JSON-lines collapse trace output");
  rec->add_option("--report", report_path, "JSON verification report output");
  rec->add_option("--snapshot-every", snapshot_every, "Mesh snapshot every N collapses");
  rec->add_option("--dump-dual", dump_dual, "DOT dump of the initial dual graph");

  CLI::App* ver = app.add_subcommand("verify", "Verify hypotheses on a cloud");
  ver->add_option("-i,--input", input, "Input cloud")->required();
  ver->add_option("--surface", c.surface, "Surface spec")->required();
  ver->add_option("--seed", c.seed, "Seed echoed into the report");
  c.th.add_to(*ver, true);
  ver->add_option("--report", report_path, "JSON verification report output");

  CLI::App* reg = app.add_subcommand("region", "Emit the feasibility region CSV");
  reg->add_option("--mode", region_mode, "naive|practical|both (columns always both)");
  reg->add_option("--grid", grid, "Grid resolution per axis");
  reg->add_option("-o,--output", out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitIo;
  }

  try {
    if (*sample) return cmd_sample(c, out);
    if (*rec)
      return cmd_reconstruct(c, mode, input, out, trace_path, report_path,
                             snapshot_every, dump_dual);
    if (*ver) return cmd_verify(c, input, report_path);
    if (*reg) return cmd_region(region_mode, grid, out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const squash::InfeasibleSpec& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kExitGate;
  } catch (const squash::ImaginaryBeta& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kExitGate;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

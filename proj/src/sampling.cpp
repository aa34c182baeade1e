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

#include "squash/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

namespace squash {
namespace {

// Uniform-grid spatial hash for nearest-neighbor queries at a fixed radius.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}

  void insert(const Point& p) {
    cells_[key(p)].push_back(p);
  }

  double nearest_dist2(const Point& p, double radius) const {
    const int r = static_cast<int>(std::ceil(radius / cell_));
    const auto [cx, cy, cz] = coords(p);
    double best = std::numeric_limits<double>::infinity();
    for (int dx = -r; dx <= r; ++dx)
      for (int dy = -r; dy <= r; ++dy)
        for (int dz = -r; dz <= r; ++dz) {
          auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (const Point& q : it->second) best = std::min(best, (p - q).squaredNorm());
        }
    return best;
  }

  bool any_within(const Point& p, double radius) const {
    const int r = static_cast<int>(std::ceil(radius / cell_));
    const double r2 = radius * radius;
    const auto [cx, cy, cz] = coords(p);
    for (int dx = -r; dx <= r; ++dx)
      for (int dy = -r; dy <= r; ++dy)
        for (int dz = -r; dz <= r; ++dz) {
          auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (const Point& q : it->second)
            if ((p - q).squaredNorm() <= r2) return true;
        }
    return false;
  }

 private:
  std::tuple<long long, long long, long long> coords(const Point& p) const {
    return {static_cast<long long>(std::floor(p.x() / cell_)),
            static_cast<long long>(std::floor(p.y() / cell_)),
            static_cast<long long>(std::floor(p.z() / cell_))};
  }
  static long long pack(long long x, long long y, long long z) {
    return (x * 73856093LL) ^ (y * 19349663LL) ^ (z * 83492791LL);
  }
  long long key(const Point& p) const {
    const auto [x, y, z] = coords(p);
    return pack(x, y, z);
  }

  double cell_;
  std::unordered_map<long long, std::vector<Point>> cells_;
};

}  // namespace

namespace {

bool has_uniform_sampler(ManifoldKind kind) {
  return kind == ManifoldKind::Circle || kind == ManifoldKind::Sphere ||
         kind == ManifoldKind::Torus;
}

// Area-uniform random point on a compact analytic manifold.
Point random_manifold_point(const AnalyticManifold& M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N(0.0, 1.0);
  switch (M.kind()) {
    case ManifoldKind::Circle: {
      const double t = 2 * M_PI * U(rng);
      const double r = M.bounding_radius();
      return Point(r * std::cos(t), r * std::sin(t), 0.0);
    }
    case ManifoldKind::Sphere: {
      Vec v(N(rng), N(rng), N(rng));
      return v.normalized() * M.bounding_radius();
    }
    case ManifoldKind::Torus: {
      // Rejection in the tube angle for area uniformity.
      const double rr = M.reach();              // minor radius
      const double rmaj = M.bounding_radius() - rr;
      for (;;) {
        const double u = 2 * M_PI * U(rng);
        const double v = 2 * M_PI * U(rng);
        if (U(rng) * (rmaj + rr) > rmaj + rr * std::cos(v)) continue;
        const double rho = rmaj + rr * std::cos(v);
        return Point(rho * std::cos(u), rho * std::sin(u), rr * std::sin(v));
      }
    }
    default:
      throw GeometryError("sampling requires a compact manifold");
  }
}

}  // namespace

PointCloud sample_manifold(const AnalyticManifold& M, const SampleSpec& spec) {
  const double eps = spec.epsilon;
  if (!(eps > 0) || !(eps < M.reach()))
    throw InfeasibleSpec("epsilon must be in (0, R)");
  const double grid_spacing = eps / 10;
  const double r_min = 0.4 * eps;  // covering radius <= r_min + grid_spacing = eps/2

  std::mt19937_64 rng(spec.seed);
  PointGrid accepted(r_min);
  std::vector<Point> base;

  // Dart throwing with random darts; a miss budget proportional to the
  // accepted count keeps the expected gap count low.
  size_t misses = 0;
  while (has_uniform_sampler(M.kind()) && misses < 500 + 10 * base.size()) {
    const Point p = random_manifold_point(M, rng);
    if (!accepted.any_within(p, r_min)) {
      accepted.insert(p);
      base.push_back(p);
      misses = 0;
    } else {
      ++misses;
    }
  }

  // Plug any residual gaps from a shuffled witness grid so the covering
  // certificate below always holds.
  std::vector<Point> grid = M.witness_grid(grid_spacing);
  std::vector<size_t> order(grid.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (size_t idx : order) {
    const Point& g = grid[idx];
    if (!accepted.any_within(g, r_min)) {
      accepted.insert(g);
      base.push_back(g);
    }
  }

  // Covering certificate: every witness point within eps/2 of a base point.
  const double cover = r_min + grid_spacing;
  for (const Point& g : grid)
    if (!accepted.any_within(g, cover))
      throw InfeasibleSpec("covering certificate failed");

  PointCloud cloud;
  cloud.dim = M.ambient_dim();
  std::ostringstream prov;
  prov << M.description() << " eps=" << eps << " delta=" << spec.delta
       << " seed=" << spec.seed;
  cloud.provenance = prov.str();

  std::uniform_real_distribution<double> jitter(-spec.delta, spec.delta);
  for (const Point& m : base) {
    Point p = m;
    if (spec.delta > 0) p += jitter(rng) * M.normal(m);
    bool dup = false;
    for (const Point& q : cloud.points)
      if ((p - q).norm() < 1e-12) {
        dup = true;
        break;
      }
    if (!dup) cloud.points.push_back(p);
  }
  return cloud;
}

SampleReport verify_sample(const PointCloud& P, const AnalyticManifold& M,
                           double epsilon, double delta) {
  SampleReport rep;
  for (const Point& p : P.points) rep.measured_delta = std::max(rep.measured_delta, M.distance(p));
  rep.delta_ok = rep.measured_delta <= delta + 1e-12;

  const double grid_spacing = epsilon / 10;
  PointGrid grid(std::max(epsilon, 1e-6));
  for (const Point& p : P.points) grid.insert(p);
  double worst = 0.0;
  for (const Point& m : M.witness_grid(grid_spacing)) {
    double d2 = grid.nearest_dist2(m, 1.25 * epsilon);
    if (!std::isfinite(d2)) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& p : P.points) best = std::min(best, (m - p).squaredNorm());
      d2 = best;
    }
    worst = std::max(worst, std::sqrt(d2));
  }
  rep.measured_eps = worst + grid_spacing;
  rep.eps_ok = rep.measured_eps <= epsilon;
  return rep;
}

PointCloud read_xyz(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open " + path);
  PointCloud cloud;
  std::string line;
  bool any_z = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x >> y)) continue;
    double z = 0;
    if (ls >> z && z != 0) any_z = true;
    cloud.points.emplace_back(x, y, z);
  }
  cloud.dim = any_z ? 3 : 2;
  return cloud;
}

void write_xyz(const PointCloud& P, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << std::setprecision(17);
  for (const Point& p : P.points) out << p.x() << " " << p.y() << " " << p.z() << "\n";
}

PointCloud read_ply_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open " + path);
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "element") {
      std::string what;
      ls >> what;
      if (what == "vertex") ls >> n;
    } else if (tok == "end_header") {
      break;
    }
  }
  PointCloud cloud;
  bool any_z = false;
  for (size_t i = 0; i < n && std::getline(in, line); ++i) {
    std::istringstream ls(line);
    double x, y, z = 0;
    ls >> x >> y >> z;
    if (z != 0) any_z = true;
    cloud.points.emplace_back(x, y, z);
  }
  cloud.dim = any_z ? 3 : 2;
  return cloud;
}

void write_ply_points(const PointCloud& P, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << "ply\nformat ascii 1.0\nelement vertex " << P.points.size()
      << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  out << std::setprecision(17);
  for (const Point& p : P.points) out << p.x() << " " << p.y() << " " << p.z() << "\n";
}

}  // namespace squash

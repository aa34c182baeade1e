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

#include "squash/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <queue>
#include <sstream>

#include "point_grid.hpp"
#include "squash/predicates.hpp"

namespace squash {
namespace {

constexpr VertexId kInf = std::numeric_limits<VertexId>::max();

struct Cell {
  std::array<VertexId, 4> v{};  // d+1 used; infinite cells keep kInf at index d
  std::array<int, 4> nb{};      // neighbor across the facet opposite v[i]
  bool alive = false;
};

class Triangulator {
 public:
  Triangulator(const std::vector<Point>& pts, int d) : pts_(pts), d_(d) {}

  void build();
  std::vector<std::array<VertexId, 4>> finite_cells() const;

 private:
  bool infinite(const Cell& c) const { return c.v[d_] == kInf; }

  int p_orient(std::span<const VertexId> ids) const {
    std::vector<Point> p;
    p.reserve(ids.size());
    for (VertexId id : ids) p.push_back(pts_[id]);
    return sos_orient(p, ids, d_);
  }

  bool conflicts(int ci, VertexId pid) const {
    const Cell& c = cells_[ci];
    if (infinite(c)) {
      std::array<VertexId, 4> f{};
      for (int i = 0; i < d_; ++i) f[i] = c.v[i];
      f[d_] = pid;
      return p_orient(std::span<const VertexId>(f.data(), d_ + 1)) > 0;
    }
    std::vector<Point> p;
    std::vector<VertexId> ids(c.v.begin(), c.v.begin() + d_ + 1);
    for (VertexId id : ids) p.push_back(pts_[id]);
    return sos_in_sphere(p, ids, d_, pts_[pid], pid) > 0;
  }

  // Facet opposite v[i], in stored cell order.
  std::vector<VertexId> facet_of(const Cell& c, int i) const {
    std::vector<VertexId> f;
    for (int j = 0; j <= d_; ++j)
      if (j != i) f.push_back(c.v[j]);
    return f;
  }

  int new_cell() {
    int idx;
    if (!free_.empty()) {
      idx = free_.back();
      free_.pop_back();
    } else {
      idx = static_cast<int>(cells_.size());
      cells_.emplace_back();
    }
    cells_[idx] = Cell{};
    cells_[idx].alive = true;
    return idx;
  }

  int locate_conflict(VertexId pid);
  void insert(VertexId pid);
  void init_first_cell(const std::vector<VertexId>& base);
  void stitch(const std::vector<int>& fresh,
              const std::map<std::vector<VertexId>, std::pair<int, int>>& outer);

  const std::vector<Point>& pts_;
  int d_;
  std::vector<Cell> cells_;
  std::vector<int> free_;
  int hint_ = 0;

 public:
  std::vector<VertexId> initial_simplex;  // affinely independent seed
};

void Triangulator::stitch(const std::vector<int>& fresh,
                          const std::map<std::vector<VertexId>, std::pair<int, int>>& outer) {
  // Pairs up facets among fresh cells; facets recorded in `outer` connect to
  // surviving cells instead.
  std::map<std::vector<VertexId>, std::pair<int, int>> open;
  for (int ci : fresh) {
    Cell& c = cells_[ci];
    for (int i = 0; i <= d_; ++i) {
      std::vector<VertexId> key = facet_of(c, i);
      std::sort(key.begin(), key.end());
      auto it = outer.find(key);
      if (it != outer.end()) {
        c.nb[i] = it->second.first;
        cells_[it->second.first].nb[it->second.second] = ci;
        continue;
      }
      auto [pos, inserted] = open.emplace(key, std::make_pair(ci, i));
      if (!inserted) {
        auto [cj, j] = pos->second;
        c.nb[i] = cj;
        cells_[cj].nb[j] = ci;
        open.erase(pos);
      }
    }
  }
}

void Triangulator::init_first_cell(const std::vector<VertexId>& base) {
  int fc = new_cell();
  Cell& c0 = cells_[fc];
  for (int i = 0; i <= d_; ++i) c0.v[i] = base[i];
  if (p_orient(std::span<const VertexId>(c0.v.data(), d_ + 1)) < 0) std::swap(c0.v[0], c0.v[1]);

  std::vector<int> fresh{fc};
  for (int i = 0; i <= d_; ++i) {
    int ic = new_cell();
    Cell& c = cells_[ic];
    std::vector<VertexId> f = facet_of(cells_[fc], i);
    // Outward order: the opposite vertex must be on the negative side.
    f.push_back(cells_[fc].v[i]);
    if (p_orient(f) > 0) std::swap(f[0], f[1]);
    for (int j = 0; j < d_; ++j) c.v[j] = f[j];
    c.v[d_] = kInf;
    fresh.push_back(ic);
  }
  stitch(fresh, {});
  hint_ = fc;
}

int Triangulator::locate_conflict(VertexId pid) {
  int cur = hint_;
  if (!cells_[cur].alive) {
    cur = -1;
    for (int i = 0; i < static_cast<int>(cells_.size()); ++i)
      if (cells_[i].alive) {
        cur = i;
        break;
      }
  }
  if (cells_[cur].v[d_] == kInf) cur = cells_[cur].nb[d_];

  size_t steps = 0;
  const size_t budget = 4 * cells_.size() + 64;
  while (steps++ < budget) {
    const Cell& c = cells_[cur];
    bool crossed = false;
    for (int i = 0; i <= d_ && !crossed; ++i) {
      std::vector<VertexId> f = facet_of(c, i);
      f.push_back(pid);
      const int side = p_orient(f);
      const int apex_side = ((d_ - i) % 2 == 0) ? 1 : -1;
      if (side == -apex_side) {
        const int nxt = c.nb[i];
        if (infinite(cells_[nxt])) return nxt;  // beyond a hull facet: conflict
        cur = nxt;
        crossed = true;
      }
    }
    if (!crossed) return cur;  // pid inside cur, hence inside its circumsphere
  }
  // Walk budget exhausted (possible only under extreme degeneracy): scan.
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i)
    if (cells_[i].alive && conflicts(i, pid)) return i;
  throw GeometryError("point location failed");
}

void Triangulator::insert(VertexId pid) {
  const int seed = locate_conflict(pid);

  // Conflict region BFS.
  std::set<int> dead;
  std::queue<int> work;
  dead.insert(seed);
  work.push(seed);
  struct Boundary {
    std::vector<VertexId> facet;  // cell order of the dying cell
    int outer_cell;
    int outer_index;  // index in outer cell pointing back at the cavity
  };
  std::vector<Boundary> boundary;
  while (!work.empty()) {
    const int ci = work.front();
    work.pop();
    for (int i = 0; i <= d_; ++i) {
      const int nb = cells_[ci].nb[i];
      if (dead.count(nb)) continue;
      if (conflicts(nb, pid)) {
        dead.insert(nb);
        work.push(nb);
      } else {
        int back = 0;
        while (cells_[nb].nb[back] != ci) ++back;
        boundary.push_back({facet_of(cells_[ci], i), nb, back});
      }
    }
  }

  std::vector<int> fresh;
  for (const Boundary& b : boundary) {
    const int ci = new_cell();
    Cell& c = cells_[ci];
    std::vector<VertexId> verts = b.facet;
    const bool inf = std::find(verts.begin(), verts.end(), kInf) != verts.end();
    if (inf) {
      verts.erase(std::find(verts.begin(), verts.end(), kInf));
      verts.push_back(pid);
      // Outward order: a finite vertex of the outer cell off this facet lies
      // on the negative (interior) side.
      VertexId ref = kInf;
      for (int j = 0; j <= d_; ++j) {
        const VertexId w = cells_[b.outer_cell].v[j];
        if (w != kInf && std::find(verts.begin(), verts.end(), w) == verts.end()) ref = w;
      }
      std::vector<VertexId> probe = verts;
      probe.push_back(ref);
      if (p_orient(probe) > 0) std::swap(verts[0], verts[1]);
      for (int j = 0; j < d_; ++j) c.v[j] = verts[j];
      c.v[d_] = kInf;
    } else {
      verts.push_back(pid);
      if (p_orient(verts) < 0) std::swap(verts[0], verts[1]);
      for (int j = 0; j <= d_; ++j) c.v[j] = verts[j];
    }
    // Link across the cavity boundary.
    std::vector<VertexId> key = b.facet;
    std::sort(key.begin(), key.end());
    int pid_index = 0;
    while (std::find(key.begin(), key.end(), c.v[pid_index]) != key.end()) ++pid_index;
    c.nb[pid_index] = b.outer_cell;
    cells_[b.outer_cell].nb[b.outer_index] = ci;
    fresh.push_back(ci);
  }

  // Pair the remaining (pid-containing) facets among the fresh cells.
  std::map<std::vector<VertexId>, std::pair<int, int>> open;
  for (int ci : fresh) {
    Cell& c = cells_[ci];
    for (int i = 0; i <= d_; ++i) {
      std::vector<VertexId> key = facet_of(c, i);
      if (std::find(key.begin(), key.end(), pid) == key.end()) continue;
      std::sort(key.begin(), key.end());
      auto [pos, inserted] = open.emplace(key, std::make_pair(ci, i));
      if (!inserted) {
        auto [cj, j] = pos->second;
        c.nb[i] = cj;
        cells_[cj].nb[j] = ci;
        open.erase(pos);
      }
    }
  }

  for (int ci : dead) {
    cells_[ci].alive = false;
    free_.push_back(ci);
  }
  hint_ = fresh.front();
}

void Triangulator::build() {
  const size_t n = pts_.size();
  if (static_cast<int>(n) < d_ + 1) throw TooFewPoints();

  // Affinely independent seed simplex by greedy rank growth.
  std::vector<VertexId> base{0};
  Eigen::MatrixXd dirs(3, 0);
  for (VertexId i = 1; i < n && static_cast<int>(base.size()) <= d_; ++i) {
    Eigen::MatrixXd cand(3, dirs.cols() + 1);
    cand.leftCols(dirs.cols()) = dirs;
    cand.col(dirs.cols()) = pts_[i] - pts_[0];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cand);
    const int rank = (svd.singularValues().array() > 1e-12 * (1.0 + svd.singularValues()(0)))
                         .cast<int>()
                         .sum();
    if (rank == cand.cols()) {
      dirs = cand;
      base.push_back(i);
    }
  }
  if (static_cast<int>(base.size()) < d_ + 1) throw AllCoplanar();
  init_first_cell(base);

  // Remaining points in Morton order for locality.
  Point lo = pts_[0], hi = pts_[0];
  for (const Point& p : pts_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec span = (hi - lo).cwiseMax(1e-30);
  auto morton = [&](const Point& p) {
    std::uint64_t code = 0;
    std::array<std::uint64_t, 3> q{};
    for (int j = 0; j < 3; ++j)
      q[j] = static_cast<std::uint64_t>(
          std::min(2097151.0, std::max(0.0, (p[j] - lo[j]) / span[j] * 2097151.0)));
    for (int b = 20; b >= 0; --b)
      for (int j = 0; j < d_; ++j) code = (code << 1) | ((q[j] >> b) & 1);
    return code;
  };
  std::vector<VertexId> rest;
  for (VertexId i = 0; i < n; ++i)
    if (std::find(base.begin(), base.end(), i) == base.end()) rest.push_back(i);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](VertexId a, VertexId b) { return morton(pts_[a]) < morton(pts_[b]); });
  for (VertexId pid : rest) insert(pid);
}

std::vector<std::array<VertexId, 4>> Triangulator::finite_cells() const {
  std::vector<std::array<VertexId, 4>> out;
  for (const Cell& c : cells_)
    if (c.alive && !infinite(c)) out.push_back(c.v);
  return out;
}

}  // namespace

DelaunayComplex delaunay(const PointCloud& P, int d) {
  if (static_cast<int>(P.points.size()) < d + 1) throw TooFewPoints();
  for (size_t i = 0; i < P.points.size(); ++i)
    for (size_t j = i + 1; j < P.points.size(); ++j)
      if ((P.points[i] - P.points[j]).norm() < 1e-12)
        throw GeometryError("duplicate points in cloud");

  Triangulator tri(P.points, d);
  tri.build();

  DelaunayComplex D;
  D.dim = d;
  D.complex = SimplicialComplex(d, P.points);
  for (VertexId i = 0; i < P.points.size(); ++i) D.complex.insert_closure({i});
  for (const auto& cell : tri.finite_cells()) {
    Simplex s(cell.begin(), cell.begin() + d + 1);
    std::sort(s.begin(), s.end());
    D.complex.insert_closure(s);
  }
  return D;
}

AlphaComplex alpha_values(const DelaunayComplex& D) {
  AlphaComplex A;
  A.dim = D.dim;
  A.complex = D.complex;
  const std::vector<Point>& pts = D.complex.coords();

  Point lo = pts[0], hi = pts[0];
  for (const Point& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double diag = (hi - lo).norm();
  const double cell = std::max(diag / 40.0, 1e-12);
  detail::IndexedPointGrid grid(pts, cell);

  auto sphere_empty = [&](const Sphere& s, const Simplex& sigma) {
    const double r2 = s.radius * s.radius;
    bool empty = true;
    auto check = [&](std::uint32_t i) {
      if (std::find(sigma.begin(), sigma.end(), i) != sigma.end()) return true;
      if ((pts[i] - s.center).squaredNorm() < r2) {
        empty = false;
        return false;
      }
      return true;
    };
    if (s.radius > 8 * cell) {
      for (std::uint32_t i = 0; i < pts.size() && empty; ++i) check(i);
    } else {
      grid.visit_ball(s.center, s.radius, check);
    }
    return empty;
  };

  for (int dim = D.dim; dim >= 0; --dim) {
    for (const Simplex& s : D.complex.simplices(dim)) {
      double a2;
      try {
        const Sphere cs = circumsphere(D.complex.points_of(s));
        a2 = cs.radius * cs.radius;
        if (dim < D.dim && !sphere_empty(cs, s)) a2 = std::numeric_limits<double>::infinity();
      } catch (const DegenerateSimplex&) {
        // Numerically flat simplex: its own circumradius is unbounded.
        a2 = std::numeric_limits<double>::infinity();
      }
      if (dim < D.dim && !std::isfinite(a2))
        for (const Simplex& c : D.complex.immediate_cofaces(s)) a2 = std::min(a2, A.alpha2.at(c));
      A.alpha2[s] = a2;
    }
  }
  return A;
}

SimplicialComplex alpha_complex(const AlphaComplex& A, double alpha) {
  SimplicialComplex K(A.dim, A.complex.coords());
  const double cutoff = alpha * alpha;
  for (int dim = 0; dim <= A.dim; ++dim)
    for (const Simplex& s : A.complex.simplices(dim))
      if (A.alpha2.at(s) <= cutoff) K.insert_closure(s);
  return K;
}

namespace {
constexpr char kCacheMagic[4] = {'S', 'Q', 'A', 'C'};
constexpr std::uint32_t kCacheVersion = 1;
}  // namespace

void write_alpha_cache(const AlphaComplex& A, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError("cannot open " + path);
  out.write(kCacheMagic, 4);
  auto put32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
  auto put64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  put32(kCacheVersion);
  put32(static_cast<std::uint32_t>(A.dim));
  put32(static_cast<std::uint32_t>(A.complex.coords().size()));
  for (const Point& p : A.complex.coords()) {
    put64(p.x());
    put64(p.y());
    put64(p.z());
  }
  put32(static_cast<std::uint32_t>(A.alpha2.size()));
  for (const auto& [s, a2] : A.alpha2) {
    put32(static_cast<std::uint32_t>(s.size() - 1));
    for (VertexId v : s) put32(v);
    put64(a2);
  }
}

AlphaComplex read_alpha_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GeometryError("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, kCacheMagic, 4) != 0) throw GeometryError("bad cache magic");
  auto get32 = [&]() {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  auto get64 = [&]() {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  if (get32() != kCacheVersion) throw GeometryError("unsupported cache version");
  AlphaComplex A;
  A.dim = static_cast<int>(get32());
  const std::uint32_t n = get32();
  std::vector<Point> coords(n);
  for (auto& p : coords) {
    p.x() = get64();
    p.y() = get64();
    p.z() = get64();
  }
  A.complex = SimplicialComplex(A.dim, coords);
  const std::uint32_t m = get32();
  std::vector<std::pair<Simplex, double>> entries(m);
  for (auto& [s, a2] : entries) {
    const std::uint32_t dim = get32();
    s.resize(dim + 1);
    for (auto& v : s) v = get32();
    a2 = get64();
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  for (const auto& [s, a2] : entries) {
    A.complex.insert_closure(s);
    A.alpha2[s] = a2;
  }
  return A;
}

void write_alpha_listing(const AlphaComplex& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << std::setprecision(17);
  for (const auto& [s, a2] : A.alpha2) {
    out << (s.size() - 1);
    for (VertexId v : s) out << " " << v;
    out << " " << a2 << "\n";
  }
}

}  // namespace squash

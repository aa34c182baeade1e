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

#include "squash/complex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <queue>
#include <sstream>

namespace squash {

Simplex make_simplex(std::initializer_list<VertexId> vs) {
  Simplex s(vs);
  std::sort(s.begin(), s.end());
  return s;
}

std::string simplex_to_string(const Simplex& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  os << ")";
  return os.str();
}

bool TopologyCertificate::matches(SurfaceKind expected, int expected_genus) const {
  if (!is_closed_surface || num_components != 1) return false;
  switch (expected) {
    case SurfaceKind::Sphere:
      return orientable && euler_characteristic == 2;
    case SurfaceKind::Torus:
      return orientable && euler_characteristic == 0 && genus == 1;
    case SurfaceKind::Circle:
      return euler_characteristic == 0;
    case SurfaceKind::GenusG:
      return orientable && euler_characteristic == 2 - 2 * expected_genus;
  }
  return false;
}

SimplicialComplex::SimplicialComplex(int ambient_dim, std::vector<Point> coords)
    : ambient_dim_(ambient_dim), coords_(std::move(coords)) {}

std::vector<Point> SimplicialComplex::points_of(const Simplex& s) const {
  std::vector<Point> pts;
  pts.reserve(s.size());
  for (VertexId v : s) pts.push_back(coords_[v]);
  return pts;
}

void SimplicialComplex::insert_closure(const Simplex& s) {
  const int n = static_cast<int>(s.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    Simplex face;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) face.push_back(s[i]);
    const int dim = static_cast<int>(face.size()) - 1;
    if (by_dim_[dim].insert(face).second) {
      cofaces_.emplace(face, std::vector<Simplex>{});
      if (dim >= 1) {
        for (size_t drop = 0; drop < face.size(); ++drop) {
          Simplex facet;
          for (size_t i = 0; i < face.size(); ++i)
            if (i != drop) facet.push_back(face[i]);
          cofaces_[facet].push_back(face);
        }
      }
      // Link any already-present immediate cofaces of the new face.
      // (Subsets are enumerated smallest-first within one insert_closure, and
      // across calls a coface can only be inserted after all its faces, so
      // the facet loop above already maintains the invariant.)
    }
  }
}

bool SimplicialComplex::contains(const Simplex& s) const {
  const int dim = static_cast<int>(s.size()) - 1;
  return dim >= 0 && dim < 4 && by_dim_[dim].count(s) > 0;
}

int SimplicialComplex::top_dim() const {
  for (int d = 3; d >= 0; --d)
    if (!by_dim_[d].empty()) return d;
  return -1;
}

const std::set<Simplex>& SimplicialComplex::simplices(int dim) const {
  static const std::set<Simplex> kEmpty;
  if (dim < 0 || dim >= 4) return kEmpty;
  return by_dim_[dim];
}

size_t SimplicialComplex::size() const {
  size_t n = 0;
  for (const auto& s : by_dim_) n += s.size();
  return n;
}

std::vector<Simplex> SimplicialComplex::immediate_cofaces(const Simplex& s) const {
  auto it = cofaces_.find(s);
  if (it == cofaces_.end()) throw SimplexNotFound();
  return it->second;
}

std::vector<Simplex> SimplicialComplex::star(const Simplex& tau) const {
  if (!contains(tau)) throw SimplexNotFound();
  std::set<Simplex> seen;
  std::queue<Simplex> work;
  work.push(tau);
  seen.insert(tau);
  while (!work.empty()) {
    Simplex s = work.front();
    work.pop();
    for (const Simplex& c : cofaces_.at(s))
      if (seen.insert(c).second) work.push(c);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Simplex> SimplicialComplex::link(const Simplex& tau) const {
  std::vector<Simplex> out;
  for (const Simplex& s : star(tau)) {
    Simplex eta;
    std::set_difference(s.begin(), s.end(), tau.begin(), tau.end(), std::back_inserter(eta));
    if (eta.size() == s.size() - tau.size() && !eta.empty()) out.push_back(eta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Simplex> SimplicialComplex::is_free(const Simplex& tau) const {
  std::vector<Simplex> maximal;
  for (const Simplex& s : star(tau))
    if (cofaces_.at(s).empty()) maximal.push_back(s);
  if (maximal.size() == 1 && maximal[0] != tau) return maximal[0];
  return std::nullopt;
}

void SimplicialComplex::erase_simplex(const Simplex& s) {
  const int dim = static_cast<int>(s.size()) - 1;
  by_dim_[dim].erase(s);
  cofaces_.erase(s);
  if (dim >= 1) {
    for (size_t drop = 0; drop < s.size(); ++drop) {
      Simplex facet;
      for (size_t i = 0; i < s.size(); ++i)
        if (i != drop) facet.push_back(s[i]);
      auto it = cofaces_.find(facet);
      if (it != cofaces_.end())
        it->second.erase(std::remove(it->second.begin(), it->second.end(), s), it->second.end());
    }
  }
  deletion_log_.push_back(s);
}

void SimplicialComplex::collapse(const Simplex& tau) {
  if (!is_free(tau)) throw NotFree();
  std::vector<Simplex> victims = star(tau);
  // Erase top-down so facet coface lists stay consistent.
  std::sort(victims.begin(), victims.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  for (const Simplex& s : victims) erase_simplex(s);
}

std::vector<Simplex> SimplicialComplex::boundary_facets() const {
  const int t = top_dim();
  std::vector<Simplex> out;
  if (t < 1) return out;
  for (const Simplex& f : by_dim_[t - 1])
    if (cofaces_.at(f).size() != 2) out.push_back(f);
  return out;
}

SimplicialComplex SimplicialComplex::boundary_complex() const {
  SimplicialComplex b(ambient_dim_, coords_);
  for (const Simplex& f : boundary_facets()) b.insert_closure(f);
  return b;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (int d = 0; d < 4; ++d) chi += (d % 2 == 0 ? 1L : -1L) * static_cast<long>(by_dim_[d].size());
  return chi;
}

int SimplicialComplex::num_components() const {
  std::map<VertexId, VertexId> parent;
  std::function<VertexId(VertexId)> find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Simplex& s : by_dim_[0]) parent[s[0]] = s[0];
  for (const Simplex& e : by_dim_[1]) parent[find(e[0])] = find(e[1]);
  std::set<VertexId> roots;
  for (const Simplex& s : by_dim_[0]) roots.insert(find(s[0]));
  return static_cast<int>(roots.size());
}

namespace {

// The boundary of a closed 1-complex where every vertex has degree two is a
// disjoint union of cycles.
TopologyCertificate certify_curve(const SimplicialComplex& K) {
  TopologyCertificate cert;
  cert.euler_characteristic = K.euler_characteristic();
  cert.num_components = K.num_components();
  cert.orientable = true;
  cert.pure = true;
  bool all_deg2 = true;
  for (const Simplex& v : K.simplices(0)) {
    const size_t deg = K.immediate_cofaces(v).size();
    if (deg == 0) cert.pure = false;
    if (deg != 2) {
      all_deg2 = false;
      cert.failure = "vertex " + simplex_to_string(v) + " has degree " + std::to_string(deg);
    }
  }
  cert.vertex_links_ok = all_deg2;
  cert.is_closed_surface = all_deg2 && cert.pure && !K.simplices(0).empty();
  cert.genus = -1;
  return cert;
}

bool link_is_single_cycle(const SimplicialComplex& K, const Simplex& v) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Simplex& eta : K.link(v))
    if (eta.size() == 2) {
      adj[eta[0]].push_back(eta[1]);
      adj[eta[1]].push_back(eta[0]);
    }
  if (adj.empty()) return false;
  for (const auto& [u, nb] : adj)
    if (nb.size() != 2) return false;
  // Connectivity: walk from the first vertex.
  std::set<VertexId> seen;
  VertexId start = adj.begin()->first;
  VertexId prev = start, cur = adj[start][0];
  seen.insert(start);
  while (cur != start) {
    seen.insert(cur);
    const auto& nb = adj[cur];
    VertexId nxt = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  }
  return seen.size() == adj.size();
}

}  // namespace

TopologyCertificate SimplicialComplex::certify_topology() const {
  TopologyCertificate cert;
  const int t = top_dim();
  if (t <= 0) {
    cert.failure = "no positive-dimensional simplices";
    cert.euler_characteristic = euler_characteristic();
    cert.num_components = num_components();
    return cert;
  }
  if (t == 1) return certify_curve(*this);
  if (t == 3) {
    cert.failure = "complex has 3-simplices; not a surface";
    cert.euler_characteristic = euler_characteristic();
    cert.num_components = num_components();
    return cert;
  }

  cert.euler_characteristic = euler_characteristic();
  cert.num_components = num_components();

  cert.pure = true;
  for (int d = 0; d < 2 && cert.pure; ++d)
    for (const Simplex& s : by_dim_[d])
      if (immediate_cofaces(s).empty()) {
        cert.pure = false;
        cert.failure = "not pure: " + simplex_to_string(s) + " is maximal below dimension 2";
      }

  bool edges_ok = true;
  for (const Simplex& e : by_dim_[1])
    if (cofaces_.at(e).size() != 2) {
      edges_ok = false;
      cert.failure = "edge " + simplex_to_string(e) + " has " +
                     std::to_string(cofaces_.at(e).size()) + " triangle cofaces";
      break;
    }

  cert.vertex_links_ok = true;
  if (edges_ok && cert.pure)
    for (const Simplex& v : by_dim_[0])
      if (!link_is_single_cycle(*this, v)) {
        cert.vertex_links_ok = false;
        cert.failure = "vertex link of " + simplex_to_string(v) + " is not a single cycle";
        break;
      }

  cert.is_closed_surface = cert.pure && edges_ok && cert.vertex_links_ok && !by_dim_[2].empty();

  // Orientability: propagate facet orientations with parity over the
  // triangle adjacency graph.
  if (cert.is_closed_surface) {
    std::map<Simplex, int> flip;  // 0 = sorted order, 1 = swapped
    cert.orientable = true;
    for (const Simplex& seed : by_dim_[2]) {
      if (flip.count(seed)) continue;
      flip[seed] = 0;
      std::queue<Simplex> work;
      work.push(seed);
      while (!work.empty() && cert.orientable) {
        Simplex tri = work.front();
        work.pop();
        auto oriented = [&](const Simplex& s) {
          std::array<VertexId, 3> o = {s[0], s[1], s[2]};
          if (flip[s]) std::swap(o[1], o[2]);
          return o;
        };
        auto edge_dir = [&](const std::array<VertexId, 3>& o, VertexId a, VertexId b) {
          // +1 when a->b appears in the cyclic order, -1 for b->a.
          for (int i = 0; i < 3; ++i)
            if (o[i] == a && o[(i + 1) % 3] == b) return 1;
          return -1;
        };
        for (size_t drop = 0; drop < 3; ++drop) {
          Simplex e;
          for (size_t i = 0; i < 3; ++i)
            if (i != drop) e.push_back(tri[i]);
          for (const Simplex& nb : cofaces_.at(e)) {
            if (nb == tri) continue;
            const int want = -edge_dir(oriented(tri), e[0], e[1]);
            if (!flip.count(nb)) {
              flip[nb] = 0;
              if (edge_dir(oriented(nb), e[0], e[1]) != want) flip[nb] = 1;
              work.push(nb);
            } else if (edge_dir(oriented(nb), e[0], e[1]) != want) {
              cert.orientable = false;
              cert.failure = "orientation conflict at edge " + simplex_to_string(e);
              break;
            }
          }
        }
      }
      if (!cert.orientable) break;
    }
    if (cert.orientable && cert.num_components == 1)
      cert.genus = static_cast<int>((2 - cert.euler_characteristic) / 2);
  }
  return cert;
}

bool SimplicialComplex::verify_embedding(size_t max_pairwise) const {
  for (int d = 1; d < 4; ++d)
    for (const Simplex& s : by_dim_[d]) {
      try {
        Flat::affine_hull(points_of(s));
      } catch (const DegenerateSimplex&) {
        return false;
      }
    }
  const int t = top_dim();
  if (t < 1) return true;
  std::vector<Simplex> tops(by_dim_[t].begin(), by_dim_[t].end());
  if (tops.size() > max_pairwise) return true;

  // Sampled proper-intersection test: interior barycentric grid points of one
  // top simplex must not land inside another.
  auto barycentric = [&](const Simplex& s, const Point& p) {
    const auto pts = points_of(s);
    const int k = static_cast<int>(s.size()) - 1;
    Eigen::MatrixXd a(3, k);
    for (int i = 0; i < k; ++i) a.col(i) = pts[i + 1] - pts[0];
    Eigen::VectorXd y = (a.transpose() * a).ldlt().solve(a.transpose() * (p - pts[0]));
    Eigen::VectorXd bary(k + 1);
    bary(0) = 1.0 - y.sum();
    for (int i = 0; i < k; ++i) bary(i + 1) = y(i);
    const Point recon = pts[0] + a * y;
    return std::make_pair(bary, (recon - p).norm());
  };
  for (const Simplex& s : tops) {
    const auto pts = points_of(s);
    const int k = static_cast<int>(s.size());
    // Interior grid points with denominator 4.
    std::vector<Point> samples;
    std::function<void(int, int, std::vector<int>&)> rec = [&](int idx, int left,
                                                               std::vector<int>& w) {
      if (idx == k - 1) {
        w[idx] = left;
        bool interior = true;
        for (int x : w) interior &= x > 0;
        if (interior) {
          Point p = Point::Zero();
          for (int i = 0; i < k; ++i) p += (w[i] / 4.0) * pts[i];
          samples.push_back(p);
        }
        return;
      }
      for (int v = 0; v <= left; ++v) {
        w[idx] = v;
        rec(idx + 1, left - v, w);
      }
    };
    std::vector<int> w(k, 0);
    rec(0, 4, w);
    for (const Simplex& other : tops) {
      if (other == s) continue;
      Simplex shared;
      std::set_intersection(s.begin(), s.end(), other.begin(), other.end(),
                            std::back_inserter(shared));
      if (shared.size() == s.size()) continue;
      for (const Point& p : samples) {
        const auto [bary, resid] = barycentric(other, p);
        if (resid > 1e-9) continue;  // off the other support
        bool inside = true;
        for (int i = 0; i < bary.size(); ++i) inside &= bary(i) > 1e-9;
        if (inside) return false;  // interior point of s strictly inside other
      }
    }
  }
  return true;
}

std::vector<Simplex> SimplicialComplex::all_simplices() const {
  std::vector<Simplex> out;
  for (int d = 0; d < 4; ++d) out.insert(out.end(), by_dim_[d].begin(), by_dim_[d].end());
  return out;
}

// ---------------------------------------------------------------------------
// Mesh IO

namespace {

std::map<VertexId, int> vertex_index_map(const SimplicialComplex& K) {
  std::map<VertexId, int> idx;
  for (const Simplex& v : K.simplices(0)) idx.emplace(v[0], static_cast<int>(idx.size()));
  return idx;
}

}  // namespace

void write_off(const SimplicialComplex& K, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  const auto idx = vertex_index_map(K);
  out << "OFF\n" << idx.size() << " " << K.simplices(2).size() << " 0\n";
  out << std::setprecision(17);
  for (const Simplex& v : K.simplices(0)) {
    const Point& p = K.point(v[0]);
    out << p.x() << " " << p.y() << " " << p.z() << "\n";
  }
  for (const Simplex& t : K.simplices(2))
    out << "3 " << idx.at(t[0]) << " " << idx.at(t[1]) << " " << idx.at(t[2]) << "\n";
}

void write_ply_mesh(const SimplicialComplex& K, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  const auto idx = vertex_index_map(K);
  out << "ply\nformat ascii 1.0\nelement vertex " << idx.size()
      << "\nproperty double x\nproperty double y\nproperty double z\nelement face "
      << K.simplices(2).size() << "\nproperty list uchar int vertex_indices\nend_header\n";
  out << std::setprecision(17);
  for (const Simplex& v : K.simplices(0)) {
    const Point& p = K.point(v[0]);
    out << p.x() << " " << p.y() << " " << p.z() << "\n";
  }
  for (const Simplex& t : K.simplices(2))
    out << "3 " << idx.at(t[0]) << " " << idx.at(t[1]) << " " << idx.at(t[2]) << "\n";
}

void write_edge_list(const SimplicialComplex& K, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << std::setprecision(17);
  for (const Simplex& v : K.simplices(0)) {
    const Point& p = K.point(v[0]);
    out << "v " << v[0] << " " << p.x() << " " << p.y() << " " << p.z() << "\n";
  }
  for (const Simplex& e : K.simplices(1)) out << "e " << e[0] << " " << e[1] << "\n";
}

SimplicialComplex read_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open " + path);
  std::string header;
  in >> header;
  if (header != "OFF") throw GeometryError("not an OFF file: " + path);
  size_t nv = 0, nf = 0, ne = 0;
  in >> nv >> nf >> ne;
  std::vector<Point> coords(nv);
  bool any_z = false;
  for (size_t i = 0; i < nv; ++i) {
    in >> coords[i].x() >> coords[i].y() >> coords[i].z();
    if (coords[i].z() != 0) any_z = true;
  }
  SimplicialComplex K(any_z ? 3 : 2, coords);
  for (size_t i = 0; i < nv; ++i) K.insert_closure({static_cast<VertexId>(i)});
  for (size_t i = 0; i < nf; ++i) {
    int k = 0;
    in >> k;
    Simplex s(k);
    for (int j = 0; j < k; ++j) in >> s[j];
    std::sort(s.begin(), s.end());
    K.insert_closure(s);
  }
  return K;
}

}  // namespace squash

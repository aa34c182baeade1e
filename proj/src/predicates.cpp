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

#include "squash/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <vector>

namespace squash {
namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Square matrices up to (d+2) x (d+2) = 5 x 5.
template <typename T>
struct SmallMat {
  int n = 0;
  std::array<std::array<T, 5>, 5> a{};
  T& operator()(int i, int j) { return a[i][j]; }
  const T& operator()(int i, int j) const { return a[i][j]; }
};

// Cofactor expansion along the first listed row; index lists live in
// fixed-size arrays so the double filter path never allocates.
template <typename T>
T det_expand(const SmallMat<T>& m, const std::array<int, 5>& rows,
             const std::array<int, 5>& cols, int k) {
  if (k == 1) return m.a[rows[0]][cols[0]];
  std::array<int, 5> sub_rows{};
  for (int i = 1; i < k; ++i) sub_rows[i - 1] = rows[i];
  T sum = 0;
  for (int c = 0; c < k; ++c) {
    const T& pivot = m.a[rows[0]][cols[c]];
    if (!(pivot == 0)) {
      std::array<int, 5> sub_cols{};
      int w = 0;
      for (int j = 0; j < k; ++j)
        if (j != c) sub_cols[w++] = cols[j];
      T minor = det_expand(m, sub_rows, sub_cols, k - 1);
      if (c % 2 == 0)
        sum += pivot * minor;
      else
        sum -= pivot * minor;
    }
  }
  return sum;
}

template <typename T>
T det(const SmallMat<T>& m) {
  std::array<int, 5> idx{0, 1, 2, 3, 4};
  return det_expand(m, idx, idx, m.n);
}

double perm_expand(const SmallMat<double>& a, const std::array<int, 5>& rows,
                   const std::array<int, 5>& cols, int k) {
  if (k == 1) return a.a[rows[0]][cols[0]];
  std::array<int, 5> sub_rows{};
  for (int i = 1; i < k; ++i) sub_rows[i - 1] = rows[i];
  double sum = 0;
  for (int c = 0; c < k; ++c) {
    std::array<int, 5> sub_cols{};
    int w = 0;
    for (int j = 0; j < k; ++j)
      if (j != c) sub_cols[w++] = cols[j];
    sum += a.a[rows[0]][cols[c]] * perm_expand(a, sub_rows, sub_cols, k - 1);
  }
  return sum;
}

// Permanent of |entries|; bounds the sum of term magnitudes in det().
double abs_permanent(const SmallMat<double>& m) {
  SmallMat<double> a = m;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) a(i, j) = std::fabs(m(i, j));
  std::array<int, 5> idx{0, 1, 2, 3, 4};
  return perm_expand(a, idx, idx, m.n);
}

// Exact dyadic decomposition of a double: value = mantissa * 2^exponent.
struct Dyadic {
  BigInt mantissa;
  int exponent = 0;
};

Dyadic to_dyadic(double x) {
  if (x == 0.0) return {BigInt(0), 0};
  int e = 0;
  const double f = std::frexp(x, &e);
  return {BigInt(std::ldexp(f, 53)), e - 53};
}

// Scales a set of doubles by one common power of two so all become integers.
std::vector<BigInt> scale_to_integers(const std::vector<double>& xs) {
  std::vector<Dyadic> dy(xs.size());
  int emin = 0;
  bool any = false;
  for (size_t i = 0; i < xs.size(); ++i) {
    dy[i] = to_dyadic(xs[i]);
    if (xs[i] != 0.0) {
      emin = any ? std::min(emin, dy[i].exponent) : dy[i].exponent;
      any = true;
    }
  }
  std::vector<BigInt> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i)
    out[i] = xs[i] == 0.0 ? BigInt(0) : dy[i].mantissa << (dy[i].exponent - emin);
  return out;
}

int big_sign(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Exact sign of det(m_double), via a filtered double evaluation with a
// conservative error bound and a rational fallback.
int det_sign(const SmallMat<double>& m) {
  const double approx = det(m);
  const double bound = abs_permanent(m) * 1e-12;
  if (std::fabs(approx) > bound) return approx > 0 ? 1 : -1;
  SmallMat<Rational> r;
  r.n = m.n;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = Rational(m(i, j));
  const Rational exact = det(r);
  if (exact > 0) return 1;
  if (exact < 0) return -1;
  return 0;
}

// Exact orientation sign via integer arithmetic: all coordinates are scaled
// by one power of two (sign-preserving) and the homogeneous determinant is
// evaluated over integers.
int hom_det_sign_int(std::span<const Point> pts, int d) {
  std::vector<double> coords;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j < d; ++j) coords.push_back(pts[i][j]);
  const std::vector<BigInt> xs = scale_to_integers(coords);
  SmallMat<BigInt> m;
  m.n = d + 1;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = xs[static_cast<size_t>(i) * d + j];
    m(i, d) = 1;
  }
  return big_sign(det(m));
}

// Exact in-sphere determinant sign over integers; the lifted column carries
// the square of the coordinate scale, a positive per-column factor that
// leaves the sign unchanged.
int lift_det_sign_int(std::span<const Point> simplex, const Point& q, int d) {
  std::vector<double> coords;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j < d; ++j) coords.push_back(simplex[i][j]);
  for (int j = 0; j < d; ++j) coords.push_back(q[j]);
  const std::vector<BigInt> xs = scale_to_integers(coords);
  SmallMat<BigInt> m;
  m.n = d + 1;
  for (int i = 0; i <= d; ++i) {
    BigInt norm2 = 0;
    for (int j = 0; j < d; ++j) {
      BigInt delta = xs[static_cast<size_t>(i) * d + j] - xs[static_cast<size_t>(d + 1) * d + j];
      m(i, j) = delta;
      norm2 += delta * delta;
    }
    m(i, d) = norm2;
  }
  return big_sign(det(m));
}

// Rational determinant sign of the matrix with a set of rows replaced by
// unit rows (used for symbolic-perturbation coefficients).
int replaced_det_sign(const SmallMat<Rational>& m,
                      const std::vector<std::pair<int, int>>& unit_rows) {
  SmallMat<Rational> r = m;
  for (const auto& [row, col] : unit_rows) {
    for (int j = 0; j < m.n; ++j) r(row, j) = 0;
    r(row, col) = 1;
  }
  const Rational d = det(r);
  if (d > 0) return 1;
  if (d < 0) return -1;
  return 0;
}

// Homogeneous orientation matrix: rows [x_0..x_{d-1}, 1].
SmallMat<double> hom_matrix(std::span<const Point> pts, int d) {
  SmallMat<double> m;
  m.n = d + 1;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = pts[i][j];
    m(i, d) = 1.0;
  }
  return m;
}

SmallMat<Rational> hom_matrix_rational(std::span<const Point> pts, int d) {
  SmallMat<Rational> m;
  m.n = d + 1;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Rational(pts[i][j]);
    m(i, d) = 1;
  }
  return m;
}

// In-sphere matrix: rows [(p - q) coords, |p - q|^2] for p in simplex.
SmallMat<double> lift_matrix(std::span<const Point> simplex, const Point& q, int d) {
  SmallMat<double> m;
  m.n = d + 1;
  for (int i = 0; i <= d; ++i) {
    double norm2 = 0;
    for (int j = 0; j < d; ++j) {
      const double v = simplex[i][j] - q[j];
      m(i, j) = v;
      norm2 += v * v;
    }
    m(i, d) = norm2;
  }
  return m;
}

SmallMat<Rational> lift_matrix_rational(std::span<const Point> simplex, const Point& q, int d) {
  SmallMat<Rational> m;
  m.n = d + 1;
  for (int i = 0; i <= d; ++i) {
    Rational norm2 = 0;
    for (int j = 0; j < d; ++j) {
      const Rational v = Rational(simplex[i][j]) - Rational(q[j]);
      m(i, j) = v;
      norm2 += v * v;
    }
    m(i, d) = norm2;
  }
  return m;
}

// A perturbation pattern assigns to some matrix rows a perturbed coordinate
// column; dominance is decided by the multiset of infinitesimal ranks.
struct Pattern {
  std::vector<std::pair<int, int>> cells;   // (row, column)
  std::vector<long long> ranks_desc;        // perturbation ranks, descending
};

bool dominates_before(const Pattern& a, const Pattern& b) {
  // Terms are products of infinitesimals eps^(2^rank); comparing the sums of
  // distinct powers of two reduces to lexicographic order on the
  // descending rank sequences, shorter-prefix first.
  const auto& x = a.ranks_desc;
  const auto& y = b.ranks_desc;
  const size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i)
    if (x[i] != y[i]) return x[i] < y[i];
  return x.size() < y.size();
}

std::vector<Pattern> make_patterns(std::span<const VertexId> indices, int d) {
  const int rows = d + 1;
  std::vector<Pattern> out;
  std::vector<int> row_subset;
  // Enumerate row subsets of size 1..d and injective column assignments.
  for (int mask = 1; mask < (1 << rows); ++mask) {
    row_subset.clear();
    for (int i = 0; i < rows; ++i)
      if (mask & (1 << i)) row_subset.push_back(i);
    const int k = static_cast<int>(row_subset.size());
    if (k > d) continue;
    std::vector<int> cols(d);
    for (int j = 0; j < d; ++j) cols[j] = j;
    std::vector<int> pick(k);
    // Iterate over ordered k-tuples of distinct columns.
    std::vector<int> stack(k, -1);
    int depth = 0;
    std::vector<bool> used(d, false);
    while (depth >= 0) {
      int& c = stack[depth];
      if (c >= 0) used[c] = false;
      ++c;
      while (c < d && used[c]) ++c;
      if (c >= d) {
        stack[depth] = -1;
        --depth;
        continue;
      }
      used[c] = true;
      if (depth + 1 == k) {
        Pattern p;
        for (int i = 0; i < k; ++i) {
          p.cells.emplace_back(row_subset[i], stack[i]);
          p.ranks_desc.push_back(static_cast<long long>(indices[row_subset[i]]) * d + stack[i]);
        }
        std::sort(p.ranks_desc.rbegin(), p.ranks_desc.rend());
        out.push_back(std::move(p));
      } else {
        ++depth;
      }
    }
  }
  std::sort(out.begin(), out.end(), dominates_before);
  return out;
}

}  // namespace

namespace {

// The homogeneous determinant (rows [x, 1]) relates to the edge-vector
// determinant by a factor (-1)^d; internal code works in the homogeneous
// convention and the public entry points convert.
int parity_factor(int d) { return d % 2 == 0 ? 1 : -1; }

int orient_hom(std::span<const Point> simplex, int d) {
  assert(static_cast<int>(simplex.size()) == d + 1);
  const SmallMat<double> m = hom_matrix(simplex, d);
  const double approx = det(m);
  if (std::fabs(approx) > abs_permanent(m) * 1e-12) return approx > 0 ? 1 : -1;
  return hom_det_sign_int(simplex, d);
}

int sos_orient_hom(std::span<const Point> simplex, std::span<const VertexId> indices, int d) {
  const int plain = orient_hom(simplex, d);
  if (plain != 0) return plain;
  const SmallMat<Rational> m = hom_matrix_rational(simplex, d);
  for (const Pattern& p : make_patterns(indices, d)) {
    const int s = replaced_det_sign(m, p.cells);
    if (s != 0) return s;
  }
  return 0;  // unreachable for distinct points
}

}  // namespace

int orient(std::span<const Point> simplex, int d) {
  return parity_factor(d) * orient_hom(simplex, d);
}

int sos_orient(std::span<const Point> simplex, std::span<const VertexId> indices, int d) {
  return parity_factor(d) * sos_orient_hom(simplex, indices, d);
}

namespace {

int lift_sign(std::span<const Point> simplex, const Point& query, int d) {
  const SmallMat<double> m = lift_matrix(simplex, query, d);
  const double approx = det(m);
  if (std::fabs(approx) > abs_permanent(m) * 1e-12) return approx > 0 ? 1 : -1;
  return lift_det_sign_int(simplex, query, d);
}

}  // namespace

int in_sphere(std::span<const Point> simplex, const Point& query, int d) {
  const int o = orient_hom(simplex, d);
  if (o == 0) throw DegenerateSimplex();
  return o * lift_sign(simplex, query, d);
}

int sos_in_sphere(std::span<const Point> simplex, std::span<const VertexId> indices, int d,
                  const Point& query, VertexId query_index) {
  const int o = sos_orient_hom(simplex, indices, d);
  int s = lift_sign(simplex, query, d);
  if (s == 0) {
    // Resolve with infinitesimal weights on the lifted coordinate, lower
    // global index first.  The coefficient of point p's weight is (up to
    // sign) the orientation of the remaining points; a vanishing
    // coefficient falls back to the coordinate perturbation.
    const SmallMat<Rational> m = lift_matrix_rational(simplex, query, d);
    std::vector<std::pair<VertexId, int>> order;  // (global index, row or -1 for query)
    for (int i = 0; i <= d; ++i) order.emplace_back(indices[i], i);
    order.emplace_back(query_index, -1);
    std::sort(order.begin(), order.end());
    for (const auto& [g, row] : order) {
      if (row < 0) {
        // Coefficient of the query weight: det with the lifted column
        // replaced by ones == homogeneous orientation of the simplex.
        SmallMat<Rational> r = m;
        for (int i = 0; i <= d; ++i) r(i, d) = 1;
        const Rational dd = det(r);
        int c = dd > 0 ? 1 : (dd < 0 ? -1 : 0);
        if (c == 0) c = sos_orient_hom(simplex, indices, d);
        if (c != 0) {
          s = c;
          break;
        }
      } else {
        int c = replaced_det_sign(m, {{row, d}});
        if (c == 0) {
          // (-1)^row * orientation of (query, simplex \ {p_row}).
          std::vector<Point> pts;
          std::vector<VertexId> ids;
          pts.push_back(query);
          ids.push_back(query_index);
          for (int i = 0; i <= d; ++i)
            if (i != row) {
              pts.push_back(simplex[i]);
              ids.push_back(indices[i]);
            }
          c = sos_orient_hom(pts, ids, d);
          if (row % 2 == 1) c = -c;
        }
        if (c != 0) {
          s = -c;  // weight enters the lifted coordinate negatively
          break;
        }
      }
    }
  }
  return o * s;
}

}  // namespace squash

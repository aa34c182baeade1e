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

#include "squash/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "squash/vertical.hpp"

namespace squash {

bool strict_homotopy(double epsilon, double delta, double R) {
  if (R <= 0) throw GeometryError("R must be positive");
  if (delta <= epsilon)
    return (R - delta) * (R - delta) - epsilon * epsilon > (4 * std::sqrt(2.0) - 5) * R * R;
  return epsilon + std::sqrt(2.0) * delta < (std::sqrt(2.0) - 1) * R;
}

std::optional<std::pair<double, double>> interval_I(double epsilon, double delta,
                                                    double R) {
  if (!strict_homotopy(epsilon, delta, R)) return std::nullopt;
  if (delta >= epsilon) {
    const double d0 = 2 * (R - delta) * (R - delta) - (R + epsilon) * (R + epsilon);
    if (d0 < 0) return std::nullopt;
    const double s = std::sqrt(d0);
    return std::pair{(R + epsilon - s) / 2, (R + epsilon + s) / 2};
  }
  const double q = epsilon * epsilon - (R - delta) * (R - delta);
  const double d1 = q * q / (R * R) - 10 * q - 7 * R * R;
  if (d1 < 0) return std::nullopt;
  const double mid = ((R - delta) * (R - delta) + R * R - epsilon * epsilon) / R;
  const double beta_min = (mid - std::sqrt(d1)) / 4;
  const double beta_max = (mid + std::sqrt(d1)) / 4;
  const double amin2 = (1 + beta_min / R) * epsilon * epsilon + beta_min * beta_min +
                       beta_min / R * (R * R - (R - delta) * (R - delta));
  const double amax2 = (R - delta) * (R - delta) - (R - beta_max) * (R - beta_max);
  if (amin2 < 0 || amax2 < 0) return std::nullopt;
  return std::pair{std::sqrt(amin2), std::sqrt(amax2)};
}

double beta_of(double epsilon, double alpha, double R) {
  const double radicand =
      alpha * alpha + std::pow(epsilon, 4) / (4 * R * R) - epsilon * epsilon;
  if (radicand < 0) throw ImaginaryBeta();
  return -epsilon * epsilon / (2 * R) + std::sqrt(radicand);
}

namespace {

double checked_asin(double x) {
  if (x > 1.0) {
    if (x > 1.0 + 1e-12) throw BoundExceedsOne();
    x = 1.0;
  }
  return std::asin(std::max(x, -1.0));
}

}  // namespace

double edge_angle_bound(double len, double R) {
  if (len <= 0 || R <= 0) throw GeometryError("positive length and R required");
  return checked_asin(len / (2 * R));
}

double triangle_angle_bound(std::span<const Point> triangle, double R) {
  if (triangle.size() != 3) throw GeometryError("triangle expected");
  const double rho = circumsphere(triangle).radius;
  // Obtuse iff the angle opposite the longest edge exceeds pi/2.
  int longest = 0;
  double best = -1;
  for (int i = 0; i < 3; ++i) {
    const double l = (triangle[(i + 1) % 3] - triangle[(i + 2) % 3]).norm();
    if (l > best) {
      best = l;
      longest = i;
    }
  }
  const Vec u = triangle[(longest + 1) % 3] - triangle[longest];
  const Vec v = triangle[(longest + 2) % 3] - triangle[longest];
  const bool obtuse = u.dot(v) < 0;
  return checked_asin((obtuse ? 1.0 : std::sqrt(3.0)) * rho / R);
}

double angular_deviation_spread_bound(double rho, double R) {
  if (rho >= R) throw BoundExceedsOne();
  return 2 * checked_asin(rho / R);
}

ConditionReport check_theorem22_conditions(const SimplicialComplex& K,
                                           const AnalyticManifold& M,
                                           const SamplingParams& params) {
  const int d = K.ambient_dim();
  const double R = params.R;
  const double delta = params.delta;
  const double alpha = params.alpha;
  ConditionReport rep;
  rep.beta = params.beta > 0 ? params.beta : beta_of(params.epsilon, alpha, R);

  rep.gate_ok = true;
  if (!(alpha >= delta && alpha < 2 * (R - delta) / 3)) {
    rep.gate_ok = false;
    rep.gate_failure = "alpha outside [delta, 2(R-delta)/3)";
  } else if (auto I = interval_I(params.epsilon, delta, R);
             !I || alpha < I->first || alpha > I->second) {
    rep.gate_ok = false;
    rep.gate_failure = I ? "alpha outside I(epsilon,delta)" : "strict homotopy fails";
  }

  const double rhs3 =
      checked_asin(((R + rep.beta) * (R + rep.beta) - (R + delta) * (R + delta) -
                    alpha * alpha) /
                   (2 * (R + delta) * alpha));
  const double rhs4 = M_PI / 2 - 2 * checked_asin(alpha / (2 * (R - delta - alpha)));

  const double inf = std::numeric_limits<double>::infinity();
  rep.c2_margin = rep.c3_margin = rep.c4_margin = rep.c4_margin_grid = rep.c5_margin = inf;

  auto vertex_angle_range = [&](const Simplex& s, const Flat& aff) {
    double lo = inf, hi = -inf;
    for (VertexId v : s) {
      const double a = angle_between_flats(aff, M.tangent_flat(M.project(K.point(v))));
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    return std::pair{lo, hi};
  };

  for (int i = 1; i < d; ++i) {
    for (const Simplex& tau : K.simplices(i)) {
      const std::vector<Point> pts = K.points_of(tau);
      const AngleRange range = angle_range_over_support(pts, M, 1e-3);
      const double m2 = M_PI / 2 - range.max_angle;
      if (m2 < rep.c2_margin) {
        rep.c2_margin = m2;
        rep.c2_binding = tau;
      }
      const Flat aff = Flat::affine_hull(pts);
      const auto [vmin, vmax] = vertex_angle_range(tau, aff);
      const double m3 = rhs3 - vmin;
      if (m3 < rep.c3_margin) {
        rep.c3_margin = m3;
        rep.c3_binding = tau;
      }
      if (i == d - 1) {
        const double m4 = rhs4 - vmin;
        if (m4 < rep.c4_margin) {
          rep.c4_margin = m4;
          rep.c4_binding = tau;
        }
        rep.c4_margin_grid = std::min(rep.c4_margin_grid, rhs4 - range.min_angle);
        const double m5 = M_PI / 4 - vmax;
        if (m5 < rep.c5_margin) {
          rep.c5_margin = m5;
          rep.c5_binding = tau;
        }
      }
    }
  }
  rep.c2_ok = rep.c2_margin > 0;
  rep.c3_ok = rep.c3_margin > 0;
  rep.c4_ok = rep.c4_margin > 0;
  rep.c5_ok = rep.c5_margin > 0;
  return rep;
}

namespace {

// Noiseless 3D gate shared by both regions (delta = 0, R = 1).
bool region_gate(double eps, double alpha) {
  if (eps < 0 || alpha < 0) return false;
  if (eps > std::sqrt(6 - 4 * std::sqrt(2.0))) return false;
  const auto I = interval_I(eps, 0.0, 1.0);
  if (!I || alpha < I->first || alpha > I->second) return false;
  if (alpha > 1 / std::sqrt(3.0)) return false;
  return true;
}

}  // namespace

bool naive_feasible(double eps_over_R, double alpha_over_R) {
  const double e = eps_over_R, a = alpha_over_R;
  if (!region_gate(e, a)) return false;
  if (a == 0) return false;
  double beta;
  try {
    beta = beta_of(e, a, 1.0);
  } catch (const ImaginaryBeta&) {
    return false;
  }
  const double lhs = std::sqrt(3.0) * a;
  const double rhs1 = ((1 + beta) * (1 + beta) - 1 - a * a) / (2 * a);
  if (a > 1) return false;
  const double rhs2 = std::cos(2 * std::asin(a));
  return lhs < std::min(rhs1, rhs2);
}

bool practical_feasible(double eps_over_R, double alpha_over_R) {
  if (!naive_feasible(eps_over_R, alpha_over_R)) return false;
  const double a = alpha_over_R;
  return std::sqrt(3.0) * a < std::sin(M_PI / 4 - 2 * std::asin(a));
}

void feasible_region_3d(int grid, const std::string& path) {
  if (grid < 2) throw GeometryError("grid resolution must be at least 2");
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << "eps_over_R,alpha_over_R,naive_feasible,practical_feasible\n";
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double e = static_cast<double>(i) / (grid - 1);
      const double a = static_cast<double>(j) / (grid - 1);
      out << e << "," << a << "," << (naive_feasible(e, a) ? 1 : 0) << ","
          << (practical_feasible(e, a) ? 1 : 0) << "\n";
    }
}

bool purity_threshold_check(double epsilon, double R) {
  if (epsilon >= R) return false;
  const double x = epsilon / R;
  return 2 * std::asin(x / 2) + std::asin(x) < M_PI / 2;
}

double purity_threshold() {
  // Bisection on f(x) = 2 asin(x/2) + asin(x) - pi/2, increasing on [0,1].
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    if (2 * std::asin(mid / 2) + std::asin(mid) < M_PI / 2)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace squash

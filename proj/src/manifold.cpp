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

#include "squash/manifold.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace squash {
namespace {

constexpr double kMedialTol = 1e-9;
constexpr double kReachSentinel = 1e30;

double fd_step(double v) { return 1e-6 * (1.0 + std::fabs(v)); }

Vec numeric_gradient(const std::function<double(const Point&)>& f, const Point& x, int dim) {
  Vec g = Vec::Zero();
  for (int i = 0; i < dim; ++i) {
    Point a = x, b = x;
    const double h = fd_step(x[i]);
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

}  // namespace

AnalyticManifold AnalyticManifold::circle(double radius) {
  AnalyticManifold m;
  m.kind_ = ManifoldKind::Circle;
  m.dim_ = 2;
  m.radius_ = radius;
  m.reach_ = radius;
  std::ostringstream os;
  os << "circle r=" << radius;
  m.description_ = os.str();
  return m;
}

AnalyticManifold AnalyticManifold::sphere(double radius) {
  AnalyticManifold m;
  m.kind_ = ManifoldKind::Sphere;
  m.dim_ = 3;
  m.radius_ = radius;
  m.reach_ = radius;
  std::ostringstream os;
  os << "sphere r=" << radius;
  m.description_ = os.str();
  return m;
}

AnalyticManifold AnalyticManifold::torus(double major, double minor) {
  AnalyticManifold m;
  m.kind_ = ManifoldKind::Torus;
  m.dim_ = 3;
  m.major_ = major;
  m.minor_ = minor;
  m.reach_ = minor;
  std::ostringstream os;
  os << "torus R=" << major << " r=" << minor;
  m.description_ = os.str();
  return m;
}

AnalyticManifold AnalyticManifold::plane(const Point& base, const Vec& normal, int ambient_dim) {
  AnalyticManifold m;
  m.kind_ = ManifoldKind::Plane;
  m.dim_ = ambient_dim;
  m.base_ = base;
  m.normal_ = normal.normalized();
  m.reach_ = kReachSentinel;
  m.infinite_reach_ = true;
  std::ostringstream os;
  os << "plane n=" << m.normal_.x() << "," << m.normal_.y() << "," << m.normal_.z()
     << " p=" << base.x() << "," << base.y() << "," << base.z();
  m.description_ = os.str();
  return m;
}

AnalyticManifold AnalyticManifold::implicit(std::function<double(const Point&)> level_set,
                                            double reach_lower_bound, int ambient_dim) {
  AnalyticManifold m;
  m.kind_ = ManifoldKind::Implicit;
  m.dim_ = ambient_dim;
  m.level_ = std::move(level_set);
  m.reach_ = reach_lower_bound;
  m.description_ = "implicit";
  return m;
}

double AnalyticManifold::bounding_radius() const {
  switch (kind_) {
    case ManifoldKind::Circle:
    case ManifoldKind::Sphere:
      return radius_;
    case ManifoldKind::Torus:
      return major_ + minor_;
    default:
      return kReachSentinel;
  }
}

Point AnalyticManifold::project(const Point& x) const {
  switch (kind_) {
    case ManifoldKind::Circle:
    case ManifoldKind::Sphere: {
      Point r = x;
      if (kind_ == ManifoldKind::Circle) r.z() = 0;
      const double n = r.norm();
      if (n < kMedialTol) throw NearMedialAxis();
      return r * (radius_ / n);
    }
    case ManifoldKind::Torus: {
      const double rho = std::hypot(x.x(), x.y());
      if (rho < kMedialTol) throw NearMedialAxis();
      const Point core(major_ * x.x() / rho, major_ * x.y() / rho, 0.0);
      const Vec off = x - core;
      const double n = off.norm();
      if (n < kMedialTol) throw NearMedialAxis();
      return core + off * (minor_ / n);
    }
    case ManifoldKind::Plane:
      return x - ((x - base_).dot(normal_)) * normal_;
    case ManifoldKind::Implicit: {
      Point p = x;
      for (int it = 0; it < 100; ++it) {
        const double f = level_(p);
        if (std::fabs(f) < 1e-12) return p;
        const Vec g = numeric_gradient(level_, p, dim_);
        const double g2 = g.squaredNorm();
        if (g2 < 1e-20) throw NearMedialAxis();
        Vec step = -(f / g2) * g;
        // Damping: never move more than the reach bound in one step.
        const double cap = 0.5 * reach_;
        if (step.norm() > cap) step *= cap / step.norm();
        p += step;
      }
      throw NearMedialAxis();
    }
  }
  throw GeometryError("unreachable");
}

Vec AnalyticManifold::normal(const Point& m) const {
  if (distance(m) > tolerances().on_manifold) throw NotOnManifold();
  switch (kind_) {
    case ManifoldKind::Circle: {
      Vec v(m.x(), m.y(), 0.0);
      return v.normalized();
    }
    case ManifoldKind::Sphere:
      return m.normalized();
    case ManifoldKind::Torus: {
      const double rho = std::hypot(m.x(), m.y());
      const Point core(major_ * m.x() / rho, major_ * m.y() / rho, 0.0);
      return (m - core).normalized();
    }
    case ManifoldKind::Plane:
      return normal_;
    case ManifoldKind::Implicit:
      return numeric_gradient(level_, m, dim_).normalized();
  }
  throw GeometryError("unreachable");
}

double AnalyticManifold::distance(const Point& x) const {
  switch (kind_) {
    case ManifoldKind::Circle:
      return std::fabs(std::hypot(x.x(), x.y()) - radius_);
    case ManifoldKind::Sphere:
      return std::fabs(x.norm() - radius_);
    case ManifoldKind::Torus: {
      const double rho = std::hypot(x.x(), x.y());
      return std::fabs(std::hypot(rho - major_, x.z()) - minor_);
    }
    case ManifoldKind::Plane:
      return std::fabs((x - base_).dot(normal_));
    case ManifoldKind::Implicit:
      return (x - project(x)).norm();
  }
  throw GeometryError("unreachable");
}

double AnalyticManifold::alt(const Point& x) const {
  const Point m = project(x);
  return (x - m).dot(normal(m));
}

double AnalyticManifold::side(const Point& x) const {
  switch (kind_) {
    case ManifoldKind::Circle:
      return std::hypot(x.x(), x.y()) - radius_;
    case ManifoldKind::Sphere:
      return x.norm() - radius_;
    case ManifoldKind::Torus: {
      const double rho = std::hypot(x.x(), x.y());
      return std::hypot(rho - major_, x.z()) - minor_;
    }
    case ManifoldKind::Plane:
      return (x - base_).dot(normal_);
    case ManifoldKind::Implicit:
      return level_(x);
  }
  throw GeometryError("unreachable");
}

Flat AnalyticManifold::tangent_flat(const Point& m) const {
  return Flat::hyperplane(m, normal(m), dim_);
}

std::vector<Point> AnalyticManifold::witness_grid(double spacing) const {
  std::vector<Point> out;
  switch (kind_) {
    case ManifoldKind::Circle: {
      const int n = std::max(8, static_cast<int>(std::ceil(2 * M_PI * radius_ / spacing)));
      out.reserve(n);
      for (int i = 0; i < n; ++i) {
        const double t = 2 * M_PI * i / n;
        out.emplace_back(radius_ * std::cos(t), radius_ * std::sin(t), 0.0);
      }
      return out;
    }
    case ManifoldKind::Sphere: {
      const int bands = std::max(4, static_cast<int>(std::ceil(M_PI * radius_ / spacing)));
      for (int i = 0; i <= bands; ++i) {
        const double theta = M_PI * i / bands;
        const double ring = 2 * M_PI * radius_ * std::sin(theta);
        const int n = std::max(1, static_cast<int>(std::ceil(ring / spacing)));
        for (int j = 0; j < n; ++j) {
          const double phi = 2 * M_PI * j / n;
          out.emplace_back(radius_ * std::sin(theta) * std::cos(phi),
                           radius_ * std::sin(theta) * std::sin(phi),
                           radius_ * std::cos(theta));
        }
      }
      return out;
    }
    case ManifoldKind::Torus: {
      const int nu = std::max(8, static_cast<int>(std::ceil(2 * M_PI * (major_ + minor_) / spacing)));
      const int nv = std::max(8, static_cast<int>(std::ceil(2 * M_PI * minor_ / spacing)));
      out.reserve(static_cast<size_t>(nu) * nv);
      for (int i = 0; i < nu; ++i) {
        const double u = 2 * M_PI * i / nu;
        for (int j = 0; j < nv; ++j) {
          const double v = 2 * M_PI * j / nv;
          const double rho = major_ + minor_ * std::cos(v);
          out.emplace_back(rho * std::cos(u), rho * std::sin(u), minor_ * std::sin(v));
        }
      }
      return out;
    }
    default:
      throw GeometryError("witness grid requires a compact manifold");
  }
}

// ---------------------------------------------------------------------------
// Expression parser for implicit level sets.

namespace {

struct ExprParser {
  const std::string& s;
  size_t i = 0;

  explicit ExprParser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  using Fn = std::function<double(const Point&)>;

  Fn parse() {
    Fn e = expr();
    skip();
    if (i != s.size()) throw GeometryError("trailing input in expression: " + s.substr(i));
    return e;
  }

  Fn expr() {
    Fn lhs = term();
    for (;;) {
      if (eat('+')) {
        Fn rhs = term();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) + rhs(p); };
      } else if (eat('-')) {
        Fn rhs = term();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) - rhs(p); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = factor();
    for (;;) {
      if (eat('*')) {
        Fn rhs = factor();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) * rhs(p); };
      } else if (eat('/')) {
        Fn rhs = factor();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) / rhs(p); };
      } else {
        return lhs;
      }
    }
  }

  Fn factor() {
    if (eat('-')) {
      Fn f = factor();
      return [f](const Point& p) { return -f(p); };
    }
    Fn base = atom();
    if (eat('^')) {
      Fn exp = factor();
      return [base, exp](const Point& p) { return std::pow(base(p), exp(p)); };
    }
    return base;
  }

  Fn atom() {
    skip();
    if (i >= s.size()) throw GeometryError("unexpected end of expression");
    const char c = s[i];
    if (c == '(') {
      ++i;
      Fn e = expr();
      if (!eat(')')) throw GeometryError("missing ')' in expression");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = 0;
      const double v = std::stod(s.substr(i), &end);
      i += end;
      return [v](const Point&) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
      const std::string name = s.substr(i, j - i);
      i = j;
      if (name == "x") return [](const Point& p) { return p.x(); };
      if (name == "y") return [](const Point& p) { return p.y(); };
      if (name == "z") return [](const Point& p) { return p.z(); };
      if (name == "pi") return [](const Point&) { return M_PI; };
      if (!eat('(')) throw GeometryError("unknown identifier: " + name);
      Fn arg = expr();
      if (!eat(')')) throw GeometryError("missing ')' after " + name);
      if (name == "sin") return [arg](const Point& p) { return std::sin(arg(p)); };
      if (name == "cos") return [arg](const Point& p) { return std::cos(arg(p)); };
      if (name == "tan") return [arg](const Point& p) { return std::tan(arg(p)); };
      if (name == "sqrt") return [arg](const Point& p) { return std::sqrt(arg(p)); };
      if (name == "exp") return [arg](const Point& p) { return std::exp(arg(p)); };
      if (name == "log") return [arg](const Point& p) { return std::log(arg(p)); };
      if (name == "abs") return [arg](const Point& p) { return std::fabs(arg(p)); };
      if (name == "atan") return [arg](const Point& p) { return std::atan(arg(p)); };
      throw GeometryError("unknown function: " + name);
    }
    throw GeometryError(std::string("unexpected character in expression: ") + c);
  }
};

Vec parse_triple(const std::string& text) {
  Vec v = Vec::Zero();
  std::istringstream in(text);
  std::string part;
  for (int i = 0; i < 3 && std::getline(in, part, ','); ++i) v[i] = std::stod(part);
  return v;
}

}  // namespace

std::function<double(const Point&)> parse_expression(const std::string& text) {
  ExprParser p(text);
  return p.parse();
}

AnalyticManifold AnalyticManifold::parse(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  std::map<std::string, std::string> kv;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw GeometryError("bad manifold token: " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto need = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw GeometryError("manifold spec missing key: " + k);
    return it->second;
  };
  if (kind == "circle") return circle(std::stod(need("r")));
  if (kind == "sphere") return sphere(std::stod(need("r")));
  if (kind == "torus") return torus(std::stod(need("R")), std::stod(need("r")));
  if (kind == "plane") {
    const Vec n = parse_triple(need("n"));
    const Vec p = parse_triple(need("p"));
    const int d = kv.count("d") ? std::stoi(kv["d"]) : 3;
    return plane(p, n, d);
  }
  if (kind == "implicit") {
    std::ifstream f(need("file"));
    if (!f) throw GeometryError("cannot open implicit surface file: " + need("file"));
    std::stringstream buf;
    buf << f.rdbuf();
    const int d = kv.count("d") ? std::stoi(kv["d"]) : 3;
    AnalyticManifold m = implicit(parse_expression(buf.str()), std::stod(need("R")), d);
    m.description_ = text;
    return m;
  }
  throw GeometryError("unknown manifold kind: " + kind);
}

}  // namespace squash

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

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "squash/common.hpp"

namespace squash::detail {

/// Uniform-grid spatial hash over an indexed point set; internal helper for
/// radius queries with early exit.
class IndexedPointGrid {
 public:
  IndexedPointGrid(const std::vector<Point>& pts, double cell) : pts_(pts), cell_(cell) {
    for (std::uint32_t i = 0; i < pts.size(); ++i) cells_[key(pts[i])].push_back(i);
  }

  /// Visits indices of points within `radius` of `c` (over-approximate cell
  /// cover; callers re-check distances).  Visitor returns false to stop.
  template <typename Visitor>
  void visit_ball(const Point& c, double radius, Visitor&& visit) const {
    const long long r = static_cast<long long>(std::ceil(radius / cell_)) + 1;
    const long long cx = cellof(c.x()), cy = cellof(c.y()), cz = cellof(c.z());
    for (long long dx = -r; dx <= r; ++dx)
      for (long long dy = -r; dy <= r; ++dy)
        for (long long dz = -r; dz <= r; ++dz) {
          auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (std::uint32_t i : it->second)
            if (!visit(i)) return;
        }
  }

 private:
  long long cellof(double x) const { return static_cast<long long>(std::floor(x / cell_)); }
  // Injective for |coordinate| < 2^20; cells outside that range would need
  // points about a million cell widths from the origin.
  static long long pack(long long x, long long y, long long z) {
    constexpr long long kBias = 1LL << 20;
    return ((x + kBias) << 42) | ((y + kBias) << 21) | (z + kBias);
  }
  long long key(const Point& p) const { return pack(cellof(p.x()), cellof(p.y()), cellof(p.z())); }

  const std::vector<Point>& pts_;
  double cell_;
  std::unordered_map<long long, std::vector<std::uint32_t>> cells_;
};

}  // namespace squash::detail

/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "subcloud/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "subcloud/error.hpp"

namespace subcloud {
namespace {

// Enlarges the cell edge until the grid fits the 21-bit key budget.
double fit_edge(const Aabb& box, double edge) {
  const Vec3 ext = box.extent();
  const double longest = std::max({ext.x, ext.y, ext.z});
  const double minimum = longest / (GridKeyer::kMaxCells - 2);
  return std::max(edge, minimum);
}

GridKeyer make_keyer(const PointCloud& cloud, double edge) {
  if (cloud.empty()) return GridKeyer(Vec3{}, edge, Aabb{});
  const Aabb box = bounds(cloud);
  return GridKeyer(box.min, fit_edge(box, edge), box);
}

}  // namespace

SpatialIndex::SpatialIndex(const PointCloud& cloud, double cell_edge)
    : cloud_(&cloud), keyer_(make_keyer(cloud, cell_edge)) {
  const auto coords = cloud.coords();
  const std::size_t n = coords.size();
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) keyed[i] = {keyer_.key(coords[i]), i};
  std::sort(keyed.begin(), keyed.end());

  order_.resize(n);
  sorted_coords_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    order_[k] = keyed[k].second;
    sorted_coords_[k] = coords[keyed[k].second];
    if (k == 0 || keyed[k].first != keyed[k - 1].first) {
      cell_keys_.push_back(keyed[k].first);
      cell_offsets_.push_back(k);
    }
  }
  cell_offsets_.push_back(n);
}

void SpatialIndex::collect_ranges(Vec3 center, double radius, std::vector<ColumnRange>& out) const {
  if (cell_keys_.empty()) return;
  const auto& dims = keyer_.dims();
  const double edge = keyer_.edge();
  const Vec3 origin = keyer_.origin();
  std::array<std::int64_t, 3> lo{};
  std::array<std::int64_t, 3> hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = static_cast<std::int64_t>(std::floor((center[a] - radius - origin[a]) / edge));
    hi[a] = static_cast<std::int64_t>(std::floor((center[a] + radius - origin[a]) / edge));
    lo[a] = std::max<std::int64_t>(lo[a], 0);
    hi[a] = std::min<std::int64_t>(hi[a], static_cast<std::int64_t>(dims[a]) - 1);
    if (lo[a] > hi[a]) return;
  }
  const double r2 = radius * radius;
  for (std::int64_t ix = lo[0]; ix <= hi[0]; ++ix) {
    // Squared distance from the center to the slab of column ix along x.
    const double x0 = origin.x + ix * edge;
    const double dx = std::max({0.0, x0 - center.x, center.x - (x0 + edge)});
    if (dx * dx > r2) continue;
    for (std::int64_t iy = lo[1]; iy <= hi[1]; ++iy) {
      const double y0 = origin.y + iy * edge;
      const double dy = std::max({0.0, y0 - center.y, center.y - (y0 + edge)});
      if (dx * dx + dy * dy > r2) continue;
      const auto first = GridKeyer::pack({static_cast<std::uint32_t>(ix),
                                          static_cast<std::uint32_t>(iy),
                                          static_cast<std::uint32_t>(lo[2])});
      const auto last = GridKeyer::pack({static_cast<std::uint32_t>(ix),
                                         static_cast<std::uint32_t>(iy),
                                         static_cast<std::uint32_t>(hi[2])});
      const auto b = std::lower_bound(cell_keys_.begin(), cell_keys_.end(), first);
      const auto e = std::upper_bound(b, cell_keys_.end(), last);
      if (b == e) continue;
      out.push_back({cell_offsets_[static_cast<std::size_t>(b - cell_keys_.begin())],
                     cell_offsets_[static_cast<std::size_t>(e - cell_keys_.begin())]});
    }
  }
}

std::vector<std::size_t> SpatialIndex::within(Vec3 center, double radius) const {
  std::vector<std::size_t> out;
  for_each_candidate(center, radius, [&](std::size_t i, const Vec3& p) {
    if (distance(p, center) < radius) out.push_back(i);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace subcloud

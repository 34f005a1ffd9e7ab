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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "subcloud/geometry.hpp"
#include "subcloud/grid.hpp"
#include "subcloud/point_cloud.hpp"

namespace subcloud {

/// Points bucketed by grid cell. Occupied cells are stored as sorted packed
/// keys; for a fixed (x, y) column the z cells form one contiguous key range,
/// so a ball query costs one binary search per column.
class SpatialIndex {
 public:
  /// `cloud` must outlive the index.
  SpatialIndex(const PointCloud& cloud, double cell_edge);

  const PointCloud& cloud() const noexcept { return *cloud_; }
  double cell_edge() const noexcept { return keyer_.edge(); }

  /// Calls visit(index, point) for every point whose cell intersects the ball
  /// (center, radius). Candidates are a superset of the points within radius.
  template <typename Visit>
  void for_each_candidate(Vec3 center, double radius, Visit&& visit) const;

  /// Indices of points with distance < radius, ascending.
  std::vector<std::size_t> within(Vec3 center, double radius) const;

 private:
  struct ColumnRange {
    std::size_t begin;
    std::size_t end;
  };
  void collect_ranges(Vec3 center, double radius, std::vector<ColumnRange>& out) const;

  const PointCloud* cloud_;
  GridKeyer keyer_;
  std::vector<std::uint64_t> cell_keys_;
  std::vector<std::size_t> cell_offsets_;  // cell_keys_.size() + 1 entries
  std::vector<std::size_t> order_;         // point indices grouped by cell
  std::vector<Vec3> sorted_coords_;        // coords in order_ order
};

template <typename Visit>
void SpatialIndex::for_each_candidate(Vec3 center, double radius, Visit&& visit) const {
  std::vector<ColumnRange> ranges;
  collect_ranges(center, radius, ranges);
  for (const auto& r : ranges) {
    for (std::size_t k = r.begin; k < r.end; ++k) visit(order_[k], sorted_coords_[k]);
  }
}

}  // namespace subcloud

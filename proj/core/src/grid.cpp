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

#include "subcloud/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subcloud/error.hpp"

namespace subcloud {

GridKeyer::GridKeyer(Vec3 origin, double edge, const Aabb& box) : origin_(origin), edge_(edge) {
  if (!(edge > 0.0) || !std::isfinite(edge)) raise(Errc::InvalidArgument, "grid edge must be > 0");
  for (int a = 0; a < 3; ++a) {
    const double span = std::floor((box.max[a] - origin[a]) / edge) + 1.0;
    if (!(span <= static_cast<double>(kMaxCells))) {
      raise(Errc::GridOverflow, "grid needs " + std::to_string(span) + " cells on axis " +
                                    std::to_string(a) + " (max 2^21)");
    }
    dims_[a] = static_cast<std::uint32_t>(std::max(1.0, span));
  }
}

GridKeyer::Cell GridKeyer::cell(Vec3 p) const {
  Cell c;
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor((p[a] - origin_[a]) / edge_);
    c[a] = static_cast<std::uint32_t>(std::clamp(f, 0.0, static_cast<double>(dims_[a] - 1)));
  }
  return c;
}

Vec3 GridKeyer::cell_min(Cell c) const {
  return {origin_.x + c[0] * edge_, origin_.y + c[1] * edge_, origin_.z + c[2] * edge_};
}

Vec3 GridKeyer::cell_center(Cell c) const {
  return {origin_.x + (c[0] + 0.5) * edge_, origin_.y + (c[1] + 0.5) * edge_,
          origin_.z + (c[2] + 0.5) * edge_};
}

}  // namespace subcloud

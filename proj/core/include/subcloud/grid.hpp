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

#include <array>
#include <cstdint>

#include "subcloud/geometry.hpp"

namespace subcloud {

/// Regular axis-aligned grid with cell indices packed as 3x21-bit keys
/// (x in the high bits), so ascending key order is lexicographic (x, y, z).
class GridKeyer {
 public:
  static constexpr int kBits = 21;
  static constexpr std::uint32_t kMaxCells = 1u << kBits;

  /// Cells of size `edge` starting at `origin`, enough to cover `box`.
  /// Throws GridOverflow if any axis needs more than 2^21 cells.
  GridKeyer(Vec3 origin, double edge, const Aabb& box);

  using Cell = std::array<std::uint32_t, 3>;

  Cell cell(Vec3 p) const;
  std::uint64_t key(Vec3 p) const { return pack(cell(p)); }

  static constexpr std::uint64_t pack(Cell c) {
    return std::uint64_t{c[0]} << (2 * kBits) | std::uint64_t{c[1]} << kBits | c[2];
  }
  static constexpr Cell unpack(std::uint64_t key) {
    constexpr std::uint64_t mask = kMaxCells - 1;
    return {static_cast<std::uint32_t>(key >> (2 * kBits) & mask),
            static_cast<std::uint32_t>(key >> kBits & mask), static_cast<std::uint32_t>(key & mask)};
  }

  Vec3 cell_center(Cell c) const;
  Vec3 cell_min(Cell c) const;

  const Cell& dims() const { return dims_; }
  double edge() const { return edge_; }
  Vec3 origin() const { return origin_; }

 private:
  Vec3 origin_;
  double edge_;
  Cell dims_{};
};

}  // namespace subcloud

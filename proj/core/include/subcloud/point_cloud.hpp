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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subcloud/geometry.hpp"

namespace subcloud {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr std::uint32_t kUnlabeled = 0xFFFFFFFFu;

/// Point coordinates plus optional per-point attribute columns. Point order is
/// the identity of points across the pipeline: every index handed out by crop,
/// fusion or evaluation refers to a row of the cloud it was produced from.
///
/// Construction validates the invariants (finite coordinates, every present
/// column has exactly size() rows); a constructed cloud is never mutated in place
/// by library code.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<Vec3> coords,
                      std::optional<std::vector<Rgb>> colors = std::nullopt,
                      std::optional<std::vector<float>> intensity = std::nullopt,
                      std::optional<std::vector<std::uint32_t>> labels = std::nullopt);

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const Vec3> coords() const noexcept { return coords_; }
  const Vec3& operator[](std::size_t i) const { return coords_[i]; }

  bool has_colors() const noexcept { return colors_.has_value(); }
  bool has_intensity() const noexcept { return intensity_.has_value(); }
  bool has_labels() const noexcept { return labels_.has_value(); }

  std::span<const Rgb> colors() const;
  std::span<const float> intensity() const;
  std::span<const std::uint32_t> labels() const;

  /// Rows at `indices`, in the given order, with every present column.
  PointCloud select(std::span<const std::size_t> indices) const;

  PointCloud with_labels(std::vector<std::uint32_t> labels) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Vec3> coords_;
  std::optional<std::vector<Rgb>> colors_;
  std::optional<std::vector<float>> intensity_;
  std::optional<std::vector<std::uint32_t>> labels_;
};

/// Tight bounds. Throws EmptyCloud for an empty cloud.
Aabb bounds(const PointCloud& cloud);
Aabb bounds(std::span<const Vec3> points);

}  // namespace subcloud

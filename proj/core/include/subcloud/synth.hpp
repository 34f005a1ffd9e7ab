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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "subcloud/crop.hpp"
#include "subcloud/fusion.hpp"
#include "subcloud/point_cloud.hpp"

namespace subcloud {

enum class SceneKind { UniformSlab, UniformBall, Rooms, Corridor };

std::string_view to_string(SceneKind kind) noexcept;
SceneKind parse_scene_kind(std::string_view name);

/// Labeled synthetic scene. Volumetric kinds fill their extent at `density`
/// points/m^3 (Poisson count). Surface kinds (Rooms, Corridor) sample 5 cm
/// thick shells around each surface at the same volumetric density.
///
/// extent: slab box size; ball radius in x; building footprint and wall height
/// for Rooms; strip length (>= 100 m), width and height for Corridor.
struct SceneSpec {
  SceneKind kind = SceneKind::UniformSlab;
  Vec3 extent{10.0, 10.0, 1.0};
  double density = 100.0;
  std::uint32_t class_count = 4;
  std::uint64_t seed = 0;

  /// Throws InvalidSpec.
  void validate() const;
};

/// Slab labels are bands along x, ball labels azimuth sectors. Rooms: 0 floor,
/// 1 wall, 2.. objects. Corridor: 0 ground, 1 barriers (30 m segments),
/// 2 poles, 3.. roadside boxes.
PointCloud generate(const SceneSpec& spec);

/// Mock segmentation model whose error grows with distance from the crop
/// center: a point flips to a uniformly chosen wrong class with probability
/// min(max_flip, base_error + error_slope * d). base_error >= 1 flips every
/// point.
///
/// Optional terms make the error depend on the crop itself:
///  - context: + context_gain * max(0, 1 - d_max / context_radius), where
///    d_max is the subcloud's extent (less context, more error);
///  - mismatch: + mismatch_error when the crop kind differs from trained_kind.
struct MockPredictorSpec {
  double base_error = 0.0;
  double error_slope = 0.0;
  std::uint64_t seed = 0;
  double max_flip = 0.99;
  double context_radius = 0.0;
  double context_gain = 0.0;
  std::optional<CropKind> trained_kind;
  double mismatch_error = 0.0;

  void validate() const;
};

/// One-hot predictions for the subcloud rows. `gt` is aligned with the
/// subcloud (ShapeMismatch otherwise); `cloud` supplies the coordinates.
/// Draws are keyed by (seed, center_id, parent index). Unlabeled ground truth
/// yields class 0.
SubcloudPrediction mock_predict(const PointCloud& cloud, const Subcloud& subcloud,
                                std::span<const std::uint32_t> gt, std::uint32_t classes,
                                const MockPredictorSpec& spec);

/// Ground truth gathered onto the subcloud rows.
std::vector<std::uint32_t> gather_labels(std::span<const std::uint32_t> labels,
                                         const Subcloud& subcloud);

/// Row-wise argmax of a prediction.
std::vector<std::uint32_t> predicted_labels(const SubcloudPrediction& prediction);

}  // namespace subcloud

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
#include <string>
#include <string_view>
#include <vector>

#include "subcloud/point_cloud.hpp"

namespace subcloud {

/// Training-time subcloud augmentation. Point and color drops always run;
/// every other step runs independently with probability apply_prob.
struct AugmentConfig {
  double drop_point_max = 0.20;
  double drop_color_max = 0.30;
  double color_noise_sigma = 0.01;  ///< on colors normalized to [0, 1]
  double scale_min = 0.9;
  double scale_max = 1.1;
  bool rotate_z = true;
  bool flip_xy = true;
  double shift_range = 0.5;  ///< meters, per axis, symmetric
  double coord_noise_sigma = 0.005;
  double apply_prob = 0.5;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Parses "key = value" lines (# comments) naming AugmentConfig fields;
/// unspecified fields keep their defaults. Throws InvalidConfig.
AugmentConfig parse_augment_config(std::string_view text, AugmentConfig base = {});

struct AugmentResult {
  PointCloud cloud;
  std::vector<std::size_t> kept;  ///< input row of each output row
};

/// Fixed order: point drop, color drop, color noise, scale, z rotation,
/// x flip, y flip, shift, coordinate noise. Dropped colors are zeroed.
AugmentResult augment(const PointCloud& cloud, const AugmentConfig& config, std::uint64_t seed);

}  // namespace subcloud

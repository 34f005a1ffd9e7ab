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
#include <limits>
#include <vector>

#include "subcloud/point_cloud.hpp"

namespace subcloud {

enum class VoxelReducer { Centroid, First, NearestToCentroid };
enum class VoxelLabelRule { MajorityVote, First };

struct VoxelParams {
  double edge = 0.02;
  VoxelReducer reducer = VoxelReducer::Centroid;
  VoxelLabelRule label_rule = VoxelLabelRule::MajorityVote;
};

struct VoxelResult {
  PointCloud cloud;
  /// index_map[parent] = output row holding that parent's voxel.
  std::vector<std::size_t> index_map;
};

/// Grid subsampling: one output point per occupied voxel, emitted in ascending
/// voxel-key order. Voxels lie on the lattice of multiples of `edge`, indexed
/// relative to the cell holding bounds.min, so a second pass with the same edge
/// sees every output point in its own voxel again.
///
/// Majority vote ignores kUnlabeled unless no member carries a label; ties go
/// to the smallest class id. "First" means the lowest parent index in the voxel.
VoxelResult voxel_downsample(const PointCloud& cloud, const VoxelParams& params);

}  // namespace subcloud

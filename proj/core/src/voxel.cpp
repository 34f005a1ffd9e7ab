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

#include "subcloud/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "subcloud/error.hpp"
#include "subcloud/grid.hpp"

namespace subcloud {

namespace {

struct LatticeKeyer {
  double edge;
  std::array<double, 3> base;

  std::uint64_t key(Vec3 p) const {
    GridKeyer::Cell c;
    for (int a = 0; a < 3; ++a) {
      c[a] = static_cast<std::uint32_t>(std::floor(p[a] / edge) - base[a]);
    }
    return GridKeyer::pack(c);
  }
};

LatticeKeyer make_lattice(const Aabb& box, double edge) {
  LatticeKeyer k{edge, {}};
  for (int a = 0; a < 3; ++a) {
    k.base[a] = std::floor(box.min[a] / edge);
    const double span = std::floor(box.max[a] / edge) - k.base[a] + 1.0;
    if (!(span <= static_cast<double>(GridKeyer::kMaxCells))) {
      raise(Errc::GridOverflow, "voxel grid needs more than 2^21 cells on axis " +
                                    std::to_string(a));
    }
  }
  return k;
}

std::uint32_t majority_label(std::span<const std::uint32_t> labels,
                             std::span<const std::pair<std::uint64_t, std::size_t>> members) {
  std::map<std::uint32_t, std::size_t> votes;
  for (const auto& m : members) {
    const std::uint32_t l = labels[m.second];
    if (l != kUnlabeled) ++votes[l];
  }
  if (votes.empty()) return kUnlabeled;
  std::uint32_t best = kUnlabeled;
  std::size_t best_count = 0;
  for (const auto& [label, count] : votes) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

VoxelResult voxel_downsample(const PointCloud& cloud, const VoxelParams& params) {
  if (!(params.edge > 0.0) || !std::isfinite(params.edge)) {
    raise(Errc::InvalidArgument, "voxel edge must be positive");
  }
  if (cloud.empty()) raise(Errc::EmptyCloud, "voxel_downsample on an empty cloud");

  const LatticeKeyer keyer = make_lattice(bounds(cloud), params.edge);
  const auto coords = cloud.coords();
  const std::size_t n = cloud.size();

  std::vector<std::pair<std::uint64_t, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {keyer.key(coords[i]), i};
  std::sort(order.begin(), order.end());

  std::vector<Vec3> out_coords;
  std::vector<Rgb> out_colors;
  std::vector<float> out_intensity;
  std::vector<std::uint32_t> out_labels;
  std::vector<std::size_t> index_map(n);

  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin;
    while (end < n && order[end].first == order[begin].first) ++end;
    const std::span<const std::pair<std::uint64_t, std::size_t>> members(order.data() + begin,
                                                                        end - begin);
    const std::size_t out_index = out_coords.size();

    Vec3 sum;
    for (const auto& m : members) {
      sum = sum + coords[m.second];
      index_map[m.second] = out_index;
    }
    const Vec3 centroid = sum * (1.0 / static_cast<double>(members.size()));

    std::size_t representative = members.front().second;
    if (params.reducer == VoxelReducer::NearestToCentroid) {
      double best = squared_norm(coords[representative] - centroid);
      for (const auto& m : members) {
        const double d = squared_norm(coords[m.second] - centroid);
        if (d < best) {
          best = d;
          representative = m.second;
        }
      }
    }
    const bool averaged = params.reducer == VoxelReducer::Centroid;

    out_coords.push_back(averaged ? centroid : coords[representative]);
    if (cloud.has_colors()) {
      if (averaged) {
        std::array<double, 3> acc{};
        for (const auto& m : members) {
          for (int c = 0; c < 3; ++c) acc[c] += cloud.colors()[m.second][c];
        }
        Rgb rgb;
        for (int c = 0; c < 3; ++c) {
          rgb[c] = static_cast<std::uint8_t>(std::lround(acc[c] / members.size()));
        }
        out_colors.push_back(rgb);
      } else {
        out_colors.push_back(cloud.colors()[representative]);
      }
    }
    if (cloud.has_intensity()) {
      if (averaged) {
        double acc = 0.0;
        for (const auto& m : members) acc += cloud.intensity()[m.second];
        out_intensity.push_back(static_cast<float>(acc / members.size()));
      } else {
        out_intensity.push_back(cloud.intensity()[representative]);
      }
    }
    if (cloud.has_labels()) {
      out_labels.push_back(params.label_rule == VoxelLabelRule::MajorityVote
                               ? majority_label(cloud.labels(), members)
                               : cloud.labels()[representative]);
    }
    begin = end;
  }

  PointCloud reduced(
      std::move(out_coords),
      cloud.has_colors() ? std::optional(std::move(out_colors)) : std::nullopt,
      cloud.has_intensity() ? std::optional(std::move(out_intensity)) : std::nullopt,
      cloud.has_labels() ? std::optional(std::move(out_labels)) : std::nullopt);
  return {std::move(reduced), std::move(index_map)};
}

}  // namespace subcloud

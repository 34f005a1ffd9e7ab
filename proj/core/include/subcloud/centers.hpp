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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subcloud/crop.hpp"
#include "subcloud/parallel.hpp"

namespace subcloud {

enum class CenterMethod { Grid, IterativeRandom };

std::string_view to_string(CenterMethod method) noexcept;

/// Crop centers; center_id of centers[k] is k.
struct CenterSet {
  std::vector<Vec3> centers;
  CenterMethod method = CenterMethod::Grid;
  double method_param = 0.0;  ///< cell edge (grid) or threshold tau (iterative)
  std::uint64_t seed = 0;
  std::optional<CropSpec> spec;

  std::size_t size() const noexcept { return centers.size(); }
};

/// One center per occupied cell of a grid anchored at bounds.min, at the cell's
/// geometric center (whether or not a point lies there), in ascending key order.
CenterSet grid_centers(const PointCloud& cloud, double cell_edge);

/// effective_radius(spec, 1/e) / overlap. For spherical crops and overlap >= 1
/// every point then lies within (sqrt(3)/2) d_m of its own cell's center.
double default_cell_edge(const CropSpec& spec, double overlap = 1.0);

struct IterativeOptions {
  /// Safety cap on the number of centers; 0 selects 10 n + 10. Hitting it
  /// means a bug, not a valid result.
  std::size_t iteration_cap = 0;
};

/// Start from a uniformly random point; keep for each point the best
/// probability over the chosen centers; while some point is below tau, pick
/// the next center uniformly among those points. Each pick lifts its own
/// point to p = 1, so the loop ends after at most n centers.
CenterSet iterative_random_centers(const PointCloud& cloud, const CropSpec& spec, double tau,
                                   std::uint64_t seed, const IterativeOptions& options = {});

struct CoverageReport {
  std::vector<double> max_prob;
  std::vector<std::uint32_t> visits;  ///< centers with p > 0 at the point
  double min_max_prob = 0.0;
  std::size_t uncovered_count = 0;

  double mean_visits() const;
};

CoverageReport coverage_report(const PointCloud& cloud, std::span<const Vec3> centers,
                               const CropSpec& spec, Parallelism par = {});

/// CSV with header center_id,x,y,z,method,param.
std::string centers_to_csv(const CenterSet& set);
CenterSet centers_from_csv(std::string_view text);

}  // namespace subcloud

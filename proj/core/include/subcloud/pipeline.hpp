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
#include <optional>
#include <string>
#include <vector>

#include "subcloud/centers.hpp"
#include "subcloud/crop.hpp"
#include "subcloud/fusion.hpp"
#include "subcloud/metrics.hpp"
#include "subcloud/parallel.hpp"
#include "subcloud/synth.hpp"

namespace subcloud {

struct CenterStrategy {
  CenterMethod method = CenterMethod::Grid;
  double overlap = 1.0;  ///< grid: cell edge = effective radius / overlap
  double tau = 0.5;      ///< iterative threshold
};

struct PipelineConfig {
  SceneSpec scene;
  CropSpec crop = CropSpec::spherical(3.0);
  CenterStrategy centers;
  MockPredictorSpec predictor;
  std::uint64_t seed = 0;
  Parallelism parallelism;
  CropOptions crop_options;
  FusionWeight weight = FusionWeight::Uniform;
  UndefinedIou undefined_iou = UndefinedIou::Exclude;
  std::vector<double> thresholds = default_sensitivity_thresholds();
};

struct PipelineReport {
  std::size_t points = 0;
  std::uint32_t classes = 0;
  std::string crop;
  std::size_t centers = 0;
  std::size_t occurrences = 0;  ///< (subcloud, point) pairs evaluated
  double mean_cardinality = 0.0;
  double mean_d_max = 0.0;

  double subcloud_miou_pooled = 0.0;  ///< one matrix over all occurrences
  double subcloud_miou_mean = 0.0;    ///< mean of per-subcloud mIoU
  double fused_miou = 0.0;
  std::vector<std::optional<double>> fused_per_class;

  std::size_t uncovered = 0;
  double min_max_prob = 0.0;
  double mean_visits = 0.0;
  std::vector<SensitivityRow> sensitivity;

  struct Timing {
    double generate_s = 0.0;
    double centers_s = 0.0;
    double crop_predict_s = 0.0;
    double fuse_s = 0.0;
    double evaluate_s = 0.0;
  } timing;
};

/// Synthesizes the scene, then runs centers -> crops -> mock predictions ->
/// subcloud-basis evaluation -> fusion -> full-cloud evaluation.
PipelineReport run_pipeline(const PipelineConfig& config);

/// Same, on a caller-provided labeled cloud (config.scene is ignored).
PipelineReport run_pipeline(const PointCloud& scene, std::uint32_t classes,
                            const PipelineConfig& config);

/// Deterministic JSON; timing is included only on request since it is the one
/// field that varies between runs.
std::string report_to_json(const PipelineReport& report, bool include_timing = false);

/// Evaluation of one fixed predictor under every crop kind: grid[t][v] is the
/// pooled subcloud mIoU when the predictor is "trained" on kind t and crops
/// use kind v. All kinds share the same centers.
struct CrossCropResult {
  std::array<CropSpec, 4> specs{CropSpec::spherical(1), CropSpec::exponential(1),
                                CropSpec::gaussian(1), CropSpec::linear(1)};
  std::array<std::array<double, 4>, 4> grid{};
};

CrossCropResult cross_crop(const PointCloud& scene, std::uint32_t classes,
                           const std::array<CropSpec, 4>& specs, std::span<const Vec3> centers,
                           const MockPredictorSpec& predictor, std::uint64_t seed,
                           Parallelism par);

std::string cross_crop_to_json(const CrossCropResult& result);

}  // namespace subcloud

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

#include "subcloud/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include "json.hpp"

#include "subcloud/error.hpp"
#include "subcloud/spatial_index.hpp"

namespace subcloud {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Index cell edge: half the support radius keeps candidate sets tight
/// without exploding the number of columns visited.
double index_edge(const CropSpec& spec, const CropOptions& options) {
  const double q = options.truncate_below > 0.0 ? options.truncate_below : 1e-3;
  return std::max(effective_radius(spec, q) / 2.0, 1e-3);
}

struct CropRun {
  std::vector<Subcloud> subclouds;
  std::vector<SubcloudPrediction> predictions;
  std::vector<std::vector<std::uint32_t>> predicted;
};

CropRun crop_and_predict(const SpatialIndex& index, std::span<const std::uint32_t> gt,
                         std::uint32_t classes, std::span<const Vec3> centers,
                         const CropSpec& spec, const MockPredictorSpec& predictor,
                         std::uint64_t seed, Parallelism par, const CropOptions& options) {
  CropRun run;
  run.subclouds.resize(centers.size());
  run.predictions.resize(centers.size());
  run.predicted.resize(centers.size());
  parallel_for(centers.size(), par, [&](std::size_t k) {
    run.subclouds[k] = crop(index, centers[k], spec, seed, k, options);
    const auto truth = gather_labels(gt, run.subclouds[k]);
    run.predictions[k] = mock_predict(index.cloud(), run.subclouds[k], truth, classes, predictor);
    run.predicted[k] = predicted_labels(run.predictions[k]);
  });
  return run;
}

std::vector<SubcloudLabels> label_views(const CropRun& run) {
  std::vector<SubcloudLabels> out;
  out.reserve(run.subclouds.size());
  for (std::size_t k = 0; k < run.subclouds.size(); ++k) {
    out.push_back({&run.subclouds[k], run.predicted[k]});
  }
  return out;
}

std::span<const std::uint32_t> require_labels(const PointCloud& scene) {
  if (!scene.has_labels()) raise(Errc::InvalidArgument, "pipeline needs a labeled cloud");
  return scene.labels();
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config) {
  const auto start = Clock::now();
  const PointCloud scene = generate(config.scene);
  const double generate_s = seconds_since(start);
  PipelineReport report = run_pipeline(scene, config.scene.class_count, config);
  report.timing.generate_s = generate_s;
  return report;
}

PipelineReport run_pipeline(const PointCloud& scene, std::uint32_t classes,
                            const PipelineConfig& config) {
  const auto gt = require_labels(scene);
  if (scene.empty()) raise(Errc::EmptyCloud, "pipeline scene has no points");
  for (const std::uint32_t label : gt) {
    if (label != kUnlabeled && label >= classes) {
      raise(Errc::ClassOutOfRange, "scene label " + std::to_string(label) + " with " +
                                       std::to_string(classes) + " classes");
    }
  }

  PipelineReport report;
  report.points = scene.size();
  report.classes = classes;
  report.crop = config.crop.to_string();

  auto t = Clock::now();
  const CenterSet centers =
      config.centers.method == CenterMethod::Grid
          ? grid_centers(scene, default_cell_edge(config.crop, config.centers.overlap))
          : iterative_random_centers(scene, config.crop, config.centers.tau, config.seed);
  report.centers = centers.size();
  report.timing.centers_s = seconds_since(t);

  t = Clock::now();
  const SpatialIndex index(scene, index_edge(config.crop, config.crop_options));
  const CropRun run = crop_and_predict(index, gt, classes, centers.centers, config.crop,
                                       config.predictor, config.seed, config.parallelism,
                                       config.crop_options);
  report.timing.crop_predict_s = seconds_since(t);

  t = Clock::now();
  PredictionBuffer buffer(scene.size(), classes);
  for (std::size_t k = 0; k < run.subclouds.size(); ++k) {
    buffer.accumulate(run.subclouds[k], run.predictions[k], config.weight);
  }
  const FusionResult fused = buffer.finalize();
  report.timing.fuse_s = seconds_since(t);

  t = Clock::now();
  const auto views = label_views(run);
  report.subcloud_miou_pooled =
      iou(subcloud_confusion(views, gt, classes), config.undefined_iou).miou;

  double miou_sum = 0.0;
  std::size_t miou_count = 0;
  double d_max_sum = 0.0;
  for (std::size_t k = 0; k < run.subclouds.size(); ++k) {
    const Subcloud& sc = run.subclouds[k];
    report.occurrences += sc.size();
    double d_max = 0.0;
    for (const std::size_t i : sc.parent_indices) d_max = std::max(d_max, distance(scene[i], sc.center));
    d_max_sum += d_max;
    const ConfusionMatrix m = subcloud_confusion(std::span(&views[k], 1), gt, classes);
    if (m.evaluated() == 0) continue;
    miou_sum += iou(m, config.undefined_iou).miou;
    ++miou_count;
  }
  if (!run.subclouds.empty()) {
    report.mean_cardinality = static_cast<double>(report.occurrences) / run.subclouds.size();
    report.mean_d_max = d_max_sum / run.subclouds.size();
  }
  report.subcloud_miou_mean = miou_count ? miou_sum / miou_count : 0.0;

  const IouResult full = iou(confusion(fused.labels, gt, classes), config.undefined_iou);
  report.fused_miou = full.miou;
  report.fused_per_class = full.per_class;

  const CoverageReport coverage =
      coverage_report(scene, centers.centers, config.crop, config.parallelism);
  report.uncovered = fused.uncovered.size();
  report.min_max_prob = coverage.min_max_prob;
  report.mean_visits = coverage.mean_visits();

  report.sensitivity =
      distance_sensitivity(scene, gt, views, config.thresholds, classes, config.undefined_iou);
  report.timing.evaluate_s = seconds_since(t);
  return report;
}

std::string report_to_json(const PipelineReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["points"] = r.points;
  j["classes"] = r.classes;
  j["crop"] = r.crop;
  j["centers"] = r.centers;
  j["occurrences"] = r.occurrences;
  j["mean_cardinality"] = r.mean_cardinality;
  j["mean_d_max"] = r.mean_d_max;
  j["subcloud"] = {{"miou_pooled", r.subcloud_miou_pooled}, {"miou_mean", r.subcloud_miou_mean}};
  auto per_class = nlohmann::ordered_json::array();
  for (const auto& v : r.fused_per_class) per_class.push_back(optional_number(v));
  j["fused"] = {{"miou", r.fused_miou}, {"per_class_iou", per_class}};
  j["coverage"] = {{"uncovered", r.uncovered},
                   {"min_max_prob", r.min_max_prob},
                   {"mean_visits", r.mean_visits}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.sensitivity) {
    rows.push_back({{"tau_p", row.tau}, {"miou", optional_number(row.miou)}, {"points", row.points}});
  }
  j["sensitivity"] = rows;
  if (include_timing) {
    j["timing_s"] = {{"generate", r.timing.generate_s},
                     {"centers", r.timing.centers_s},
                     {"crop_predict", r.timing.crop_predict_s},
                     {"fuse", r.timing.fuse_s},
                     {"evaluate", r.timing.evaluate_s}};
  }
  return j.dump(2) + "\n";
}

CrossCropResult cross_crop(const PointCloud& scene, std::uint32_t classes,
                           const std::array<CropSpec, 4>& specs, std::span<const Vec3> centers,
                           const MockPredictorSpec& predictor, std::uint64_t seed,
                           Parallelism par) {
  const auto gt = require_labels(scene);
  CrossCropResult result;
  result.specs = specs;
  for (std::size_t v = 0; v < specs.size(); ++v) {
    const SpatialIndex index(scene, index_edge(specs[v], {}));
    for (std::size_t tr = 0; tr < specs.size(); ++tr) {
      MockPredictorSpec trained = predictor;
      trained.trained_kind = specs[tr].kind();
      const CropRun run =
          crop_and_predict(index, gt, classes, centers, specs[v], trained, seed, par, {});
      const auto views = label_views(run);
      result.grid[tr][v] = iou(subcloud_confusion(views, gt, classes)).miou;
    }
  }
  return result;
}

std::string cross_crop_to_json(const CrossCropResult& result) {
  nlohmann::ordered_json j;
  auto specs = nlohmann::ordered_json::array();
  for (const auto& s : result.specs) specs.push_back(s.to_string());
  j["specs"] = specs;
  auto grid = nlohmann::ordered_json::array();
  for (const auto& row : result.grid) grid.push_back(row);
  j["trained_by_evaluated_miou"] = grid;
  return j.dump(2) + "\n";
}

}  // namespace subcloud

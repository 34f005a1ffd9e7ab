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

#include <chrono>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "subcloud/calibrate.hpp"
#include "subcloud/pipeline.hpp"
#include "subcloud/rng.hpp"
#include "subcloud/spatial_index.hpp"

namespace subcloud::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// At most `limit` centers, evenly strided, as calibration samples.
std::vector<Vec3> stride_sample(std::span<const Vec3> centers, std::size_t limit) {
  if (centers.size() <= limit) return {centers.begin(), centers.end()};
  std::vector<Vec3> out;
  for (std::size_t k = 0; k < limit; ++k) out.push_back(centers[k * centers.size() / limit]);
  return out;
}

}  // namespace

void add_run_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out) {
  {
    struct Flags {
      std::string scene = "rooms:20x15x3", crop = "spherical:3", strategy = "grid", output,
                  save_scene;
      double density = 2000.0, overlap = 1.0, tau = 0.5, truncate = 0.0;
      std::uint32_t classes = 5;
      double base_error = 0.05, slope = 0.05, max_flip = 0.99;
      double context_radius = 0.0, context_gain = 0.0, mismatch_error = 0.2;
      bool weighted = false, timing = false, cross = false;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand(
        "pipeline", "Synthetic end-to-end run: centers, crops, mock predictions, fusion, metrics");
    cmd->add_option("--scene", f->scene, "Scene kind:extent (see synth)")->capture_default_str();
    cmd->add_option("--density", f->density, "Points per cubic meter")->capture_default_str();
    cmd->add_option("--classes", f->classes, "Number of classes")->capture_default_str();
    cmd->add_option("--crop", f->crop, "Crop spec kind:param")->capture_default_str();
    cmd->add_option("--strategy", f->strategy, "grid or iterative")
        ->check(CLI::IsMember({"grid", "iterative"}))
        ->capture_default_str();
    cmd->add_option("--overlap", f->overlap, "Grid overlap factor")->capture_default_str();
    cmd->add_option("--tau", f->tau, "Iterative threshold")->capture_default_str();
    cmd->add_option("--truncate", f->truncate, "Drop probabilities below this value")
        ->capture_default_str();
    cmd->add_option("--base-error", f->base_error, "Mock flip probability at the center")
        ->capture_default_str();
    cmd->add_option("--slope", f->slope, "Mock flip probability increase per meter")
        ->capture_default_str();
    cmd->add_option("--max-flip", f->max_flip, "Mock flip probability clamp")->capture_default_str();
    cmd->add_option("--context-radius", f->context_radius,
                    "Mock: crops smaller than this extent get extra error (0 = off)")
        ->capture_default_str();
    cmd->add_option("--context-gain", f->context_gain, "Mock: extra error for a zero-extent crop")
        ->capture_default_str();
    cmd->add_flag("--weighted", f->weighted, "Fuse with selection-probability weights");
    cmd->add_flag("--timing", f->timing, "Add wall-clock timing to the report");
    cmd->add_option("--save-scene", f->save_scene, "Also write the generated scene");
    auto* cross = cmd->add_flag(
        "--cross-crop", f->cross,
        "Report the 4x4 trained-by-evaluated mIoU grid; the other kinds are calibrated to the "
        "--crop kind's expected cardinality");
    cmd->add_option("--mismatch-error", f->mismatch_error,
                    "Cross-crop: extra mock error when crop kind and trained kind differ")
        ->needs(cross)
        ->capture_default_str();
    cmd->add_option("-o,--output", f->output, "Report JSON (default stdout)");
    out.push_back({cmd, [f, &globals] {
                     PipelineConfig config;
                     config.scene = scene_flag(f->scene, f->density, f->classes, globals.seed);
                     config.crop = crop_flag(f->crop);
                     config.centers.method = f->strategy == "grid" ? CenterMethod::Grid
                                                                   : CenterMethod::IterativeRandom;
                     config.centers.overlap = f->overlap;
                     config.centers.tau = f->tau;
                     if (!(f->overlap > 0.0)) throw UsageError("--overlap must be positive");
                     if (!(f->tau > 0.0 && f->tau <= 1.0)) throw UsageError("--tau must lie in (0, 1]");
                     if (!(f->truncate >= 0.0 && f->truncate < 1.0)) {
                       throw UsageError("--truncate must lie in [0, 1)");
                     }
                     config.crop_options.truncate_below = f->truncate;
                     config.predictor.base_error = f->base_error;
                     config.predictor.error_slope = f->slope;
                     config.predictor.max_flip = f->max_flip;
                     config.predictor.context_radius = f->context_radius;
                     config.predictor.context_gain = f->context_gain;
                     config.predictor.mismatch_error = f->mismatch_error;
                     config.predictor.seed = globals.seed;
                     parse_flag([&] { config.predictor.validate(); return 0; });
                     config.seed = globals.seed;
                     config.parallelism = globals.parallelism();
                     config.weight = f->weighted ? FusionWeight::BySelectionProb : FusionWeight::Uniform;

                     if (!f->cross) {
                       const PointCloud scene = generate(config.scene);
                       if (!f->save_scene.empty()) save_cloud(globals, scene, f->save_scene);
                       const PipelineReport report =
                           run_pipeline(scene, config.scene.class_count, config);
                       emit(report_to_json(report, f->timing), f->output);
                       return;
                     }

                     const PointCloud scene = generate(config.scene);
                     if (!f->save_scene.empty()) save_cloud(globals, scene, f->save_scene);
                     const CenterSet centers =
                         grid_centers(scene, default_cell_edge(config.crop, config.centers.overlap));
                     const auto samples = stride_sample(centers.centers, 32);
                     const double target = mean_expected_cardinality(scene, samples, config.crop);
                     std::array<CropSpec, 4> specs{CropSpec::spherical(1), CropSpec::exponential(1),
                                                   CropSpec::gaussian(1), CropSpec::linear(1)};
                     CalibrateOptions options;
                     options.parallelism = config.parallelism;
                     for (std::size_t k = 0; k < specs.size(); ++k) {
                       specs[k] = kAllCropKinds[k] == config.crop.kind()
                                      ? config.crop
                                      : calibrate(scene, samples, kAllCropKinds[k], target, options);
                     }
                     const auto result = cross_crop(scene, config.scene.class_count, specs,
                                                    centers.centers, config.predictor, config.seed,
                                                    config.parallelism);
                     emit(cross_crop_to_json(result), f->output);
                   }});
  }
  {
    struct Flags {
      std::size_t points = 1'000'000, centers = 100;
      int repeat = 3;
      std::string crop = "spherical:3";
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand(
        "bench", "Time index build and crops on a uniform synthetic slab");
    cmd->add_option("--points", f->points, "Expected point count")->capture_default_str();
    cmd->add_option("--centers", f->centers, "Number of random centers")->capture_default_str();
    cmd->add_option("--crop", f->crop, "Crop spec kind:param")->capture_default_str();
    cmd->add_option("--repeat", f->repeat, "Crop repetitions; the best is reported")
        ->capture_default_str();
    out.push_back({cmd, [f, &globals] {
                     const CropSpec spec = crop_flag(f->crop);
                     if (f->points == 0 || f->centers == 0 || f->repeat < 1) {
                       throw UsageError("--points, --centers and --repeat must be positive");
                     }
                     SceneSpec scene;
                     scene.extent = {100.0, 100.0, 10.0};
                     scene.density = static_cast<double>(f->points) / 1e5;
                     scene.seed = globals.seed;
                     auto t = Clock::now();
                     const PointCloud cloud = generate(scene);
                     const double generate_s = seconds_since(t);

                     RngCursor rng(globals.seed, streams::kCenterSelection);
                     std::vector<Vec3> centers;
                     for (std::size_t k = 0; k < f->centers; ++k) centers.push_back(cloud[rng.below(cloud.size())]);

                     const Parallelism par = globals.parallelism();
                     t = Clock::now();
                     const SpatialIndex index(cloud, std::max(effective_radius(spec, 1e-3) / 2.0, 1e-3));
                     const double index_s = seconds_since(t);
                     double best = 0.0;
                     std::size_t total = 0;
                     for (int r = 0; r < f->repeat; ++r) {
                       t = Clock::now();
                       const auto subclouds = crop_all(index, centers, spec, globals.seed, par);
                       const double s = seconds_since(t);
                       if (r == 0 || s < best) best = s;
                       total = 0;
                       for (const auto& sc : subclouds) total += sc.size();
                     }
                     std::ostringstream report;
                     report << "points " << cloud.size() << "\n"
                            << "threads " << par.resolved() << "\n"
                            << "generate_s " << generate_s << "\n"
                            << "index_s " << index_s << "\n"
                            << "crop_s " << best << "\n"
                            << "mean_cardinality "
                            << static_cast<double>(total) / static_cast<double>(centers.size()) << "\n";
                     emit(report.str(), {});
                   }});
  }
}

}  // namespace subcloud::cli

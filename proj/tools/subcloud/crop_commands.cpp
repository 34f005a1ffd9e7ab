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

#include <algorithm>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "json.hpp"
#include "subcloud/calibrate.hpp"
#include "subcloud/error.hpp"
#include "subcloud/fusion.hpp"
#include "subcloud/rng.hpp"
#include "subcloud/spatial_index.hpp"
#include "subcloud/subcloud_io.hpp"
#include "subcloud/synth.hpp"

namespace subcloud::cli {

namespace {

double index_edge(const CropSpec& spec, double truncate) {
  const double q = truncate > 0.0 ? truncate : 1e-3;
  return std::max(effective_radius(spec, q) / 2.0, 1e-3);
}

/// Distinct random point positions used as calibration centers.
std::vector<Vec3> sample_points(const PointCloud& cloud, std::size_t count, std::uint64_t seed) {
  count = std::min(count, cloud.size());
  std::vector<std::size_t> order(cloud.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  RngCursor rng(seed, streams::kCalibrationSamples);
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pick = k + rng.below(order.size() - k);
    std::swap(order[k], order[pick]);
    out.push_back(cloud[order[k]]);
  }
  return out;
}

}  // namespace

void add_crop_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out) {
  {
    struct Flags {
      std::string input, strategy = "grid", crop, output;
      double overlap = 1.0, tau = 0.5, cell_edge = 0.0;
      bool coverage = false;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("centers", "Select crop centers");
    cmd->add_option("cloud", f->input, "Input cloud")->required();
    cmd->add_option("--strategy", f->strategy, "grid or iterative")
        ->check(CLI::IsMember({"grid", "iterative"}))
        ->capture_default_str();
    cmd->add_option("--crop", f->crop, "Crop spec kind:param")->required();
    auto* overlap = cmd->add_option("--overlap", f->overlap,
                                    "Grid: cell edge = effective radius / overlap")
                        ->capture_default_str();
    auto* tau = cmd->add_option("--tau", f->tau, "Iterative: coverage threshold in (0, 1]")
                    ->capture_default_str();
    overlap->excludes(tau);
    cmd->add_option("--cell-edge", f->cell_edge, "Grid: explicit cell edge in meters")
        ->excludes(overlap);
    cmd->add_option("-o,--output", f->output, "Output CSV (default stdout)");
    cmd->add_flag("--coverage", f->coverage, "Print a coverage summary on stderr");
    out.push_back({cmd, [f, &globals] {
                     const CropSpec spec = crop_flag(f->crop);
                     const bool grid = f->strategy == "grid";
                     if (grid && !(f->overlap > 0.0)) throw UsageError("--overlap must be positive");
                     if (grid && f->cell_edge < 0.0) throw UsageError("--cell-edge must be positive");
                     if (!grid && !(f->tau > 0.0 && f->tau <= 1.0)) {
                       throw UsageError("--tau must lie in (0, 1]");
                     }
                     const PointCloud cloud = load_cloud(f->input);
                     CenterSet set =
                         grid ? grid_centers(cloud, f->cell_edge > 0.0
                                                        ? f->cell_edge
                                                        : default_cell_edge(spec, f->overlap))
                              : iterative_random_centers(cloud, spec, f->tau, globals.seed);
                     set.spec = spec;
                     emit(centers_to_csv(set), f->output);
                     if (f->coverage) {
                       const CoverageReport r =
                           coverage_report(cloud, set.centers, spec, globals.parallelism());
                       std::cerr << "centers " << set.size() << " uncovered " << r.uncovered_count
                                 << " min_max_prob " << format_double(r.min_max_prob)
                                 << " mean_visits " << format_double(r.mean_visits()) << "\n";
                     }
                   }});
  }
  {
    struct Flags {
      std::string input, crop, centers, out_dir;
      double truncate = 0.0;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("crop", "Crop one subcloud per center into <out-dir>/<id>.subc");
    cmd->add_option("cloud", f->input, "Input cloud")->required();
    cmd->add_option("--crop", f->crop, "Crop spec kind:param")->required();
    cmd->add_option("--centers", f->centers, "Centers CSV")->required();
    cmd->add_option("--out-dir", f->out_dir, "Output directory")->required();
    cmd->add_option("--truncate", f->truncate,
                    "Exponential/Gaussian: drop probabilities below this value (0 = exact)")
        ->capture_default_str();
    out.push_back({cmd, [f, &globals] {
                     const CropSpec spec = crop_flag(f->crop);
                     if (!(f->truncate >= 0.0 && f->truncate < 1.0)) {
                       throw UsageError("--truncate must lie in [0, 1)");
                     }
                     const PointCloud cloud = load_cloud(f->input);
                     const CenterSet centers = load_centers(f->centers);
                     const CropOptions options{f->truncate};
                     const SpatialIndex index(cloud, index_edge(spec, f->truncate));
                     const auto subclouds = crop_all(index, centers.centers, spec, globals.seed,
                                                     globals.parallelism(), options);
                     const std::filesystem::path dir(f->out_dir);
                     std::filesystem::create_directories(dir);
                     parallel_for(subclouds.size(), globals.parallelism(), [&](std::size_t k) {
                       write_subcloud(subclouds[k], dir / subcloud_file_name(subclouds[k].center_id));
                     });
                     nlohmann::ordered_json manifest;
                     manifest["cloud"] = std::filesystem::absolute(f->input).lexically_normal().string();
                     manifest["points"] = cloud.size();
                     manifest["crop"] = spec.to_string();
                     manifest["seed"] = globals.seed;
                     manifest["truncate_below"] = f->truncate;
                     manifest["subclouds"] = subclouds.size();
                     write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
                     std::size_t total = 0;
                     for (const auto& s : subclouds) total += s.size();
                     std::cerr << subclouds.size() << " subclouds, " << total << " points\n";
                   }});
  }
  {
    struct Flags {
      std::string input, family, centers;
      double target = 0.0, rel_tol = 1e-3;
      std::size_t samples = 16;
      bool print_spec = false;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand(
        "calibrate", "Find the family parameter whose mean expected cardinality hits a target");
    cmd->add_option("cloud", f->input, "Input cloud")->required();
    cmd->add_option("--family", f->family, "spherical, exponential, gaussian or linear")->required();
    cmd->add_option("--target", f->target, "Target expected point count")->required();
    cmd->add_option("--centers", f->centers, "Centers CSV (default: random cloud points)");
    cmd->add_option("--samples", f->samples, "Random sample centers when --centers is absent")
        ->capture_default_str();
    cmd->add_option("--rel-tol", f->rel_tol, "Relative tolerance on the target")
        ->capture_default_str();
    cmd->add_flag("--print-spec", f->print_spec, "Print kind:param instead of the bare value");
    out.push_back({cmd, [f, &globals] {
                     const CropKind family = parse_flag([&] { return parse_crop_kind(f->family); });
                     if (!(f->target > 0.0)) throw UsageError("--target must be positive");
                     if (f->samples == 0) throw UsageError("--samples must be positive");
                     if (!(f->rel_tol > 0.0)) throw UsageError("--rel-tol must be positive");
                     const PointCloud cloud = load_cloud(f->input);
                     const std::vector<Vec3> centers =
                         f->centers.empty() ? sample_points(cloud, f->samples, globals.seed)
                                            : load_centers(f->centers).centers;
                     CalibrateOptions options;
                     options.rel_tol = f->rel_tol;
                     options.parallelism = globals.parallelism();
                     const CropSpec spec = calibrate(cloud, centers, family, f->target, options);
                     emit((f->print_spec ? spec.to_string() : format_double(spec.parameter())) + "\n",
                          {});
                   }});
  }
  {
    struct Flags {
      std::string input, centers, output;
      std::vector<std::string> crops;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand(
        "stats", "Per-center cardinality, expected cardinality and d_max as CSV");
    cmd->add_option("cloud", f->input, "Input cloud")->required();
    cmd->add_option("--crop", f->crops, "Crop spec kind:param (repeatable)")->required();
    cmd->add_option("--centers", f->centers, "Centers CSV")->required();
    cmd->add_option("-o,--output", f->output, "Output CSV (default stdout)");
    out.push_back({cmd, [f, &globals] {
                     std::vector<CropSpec> specs;
                     for (const auto& c : f->crops) specs.push_back(crop_flag(c));
                     const PointCloud cloud = load_cloud(f->input);
                     const CenterSet centers = load_centers(f->centers);
                     std::ostringstream csv;
                     csv << "center_id,crop,cardinality,expected_cardinality,variance,d_max\n";
                     for (const CropSpec& spec : specs) {
                       std::vector<CropStats> rows(centers.size());
                       std::vector<double> variance(centers.size());
                       parallel_for(centers.size(), globals.parallelism(), [&](std::size_t k) {
                         const Subcloud s = crop(cloud, centers.centers[k], spec, globals.seed, k);
                         rows[k] = stats(cloud, centers.centers[k], spec, s);
                         variance[k] = cardinality_variance(cloud, centers.centers[k], spec);
                       });
                       for (std::size_t k = 0; k < rows.size(); ++k) {
                         csv << k << ',' << spec.to_string() << ',' << rows[k].cardinality << ','
                             << format_double(rows[k].expected_cardinality) << ','
                             << format_double(variance[k]) << ',' << format_double(rows[k].d_max)
                             << '\n';
                       }
                     }
                     emit(csv.str(), f->output);
                   }});
  }
  {
    struct Flags {
      std::string input, subclouds, out_dir;
      std::uint32_t classes = 0;
      double base_error = 0.05, slope = 0.05, max_flip = 0.99;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand(
        "mock-predict", "Write distance-error mock predictions <id>.pred for every subcloud");
    cmd->add_option("cloud", f->input, "Labeled cloud providing ground truth")->required();
    cmd->add_option("--subclouds", f->subclouds, "Directory of .subc files")->required();
    cmd->add_option("--out-dir", f->out_dir, "Output directory")->required();
    cmd->add_option("--classes", f->classes, "Class count (default: from labels)");
    cmd->add_option("--base-error", f->base_error, "Flip probability at the center")
        ->capture_default_str();
    cmd->add_option("--slope", f->slope, "Flip probability increase per meter")
        ->capture_default_str();
    cmd->add_option("--max-flip", f->max_flip, "Upper clamp of the flip probability")
        ->capture_default_str();
    out.push_back({cmd, [f, &globals] {
                     MockPredictorSpec spec;
                     spec.base_error = f->base_error;
                     spec.error_slope = f->slope;
                     spec.max_flip = f->max_flip;
                     spec.seed = globals.seed;
                     parse_flag([&] { spec.validate(); return 0; });
                     const PointCloud cloud = load_cloud(f->input);
                     if (!cloud.has_labels()) raise(Errc::InvalidArgument, "cloud has no labels");
                     const std::uint32_t classes =
                         f->classes ? f->classes : infer_classes({cloud.labels()});
                     const auto files = list_files(f->subclouds, ".subc");
                     const std::filesystem::path dir(f->out_dir);
                     std::filesystem::create_directories(dir);
                     parallel_for(files.size(), globals.parallelism(), [&](std::size_t k) {
                       const Subcloud s = read_subcloud(files[k]);
                       const auto gt = gather_labels(cloud.labels(), s);
                       write_prediction(mock_predict(cloud, s, gt, classes, spec),
                                        dir / prediction_file_name(s.center_id));
                     });
                   }});
  }
}

}  // namespace subcloud::cli

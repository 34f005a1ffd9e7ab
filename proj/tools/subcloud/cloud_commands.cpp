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

#include <iostream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "subcloud/augment.hpp"
#include "subcloud/io.hpp"
#include "subcloud/synth.hpp"
#include "subcloud/voxel.hpp"

namespace subcloud::cli {

namespace {

std::string describe(const PointCloud& cloud, CloudFormat format) {
  std::ostringstream out;
  out << "format: " << to_string(format) << "\n";
  out << "points: " << cloud.size() << "\n";
  if (!cloud.empty()) {
    const Aabb box = bounds(cloud);
    out << "bounds_min: " << format_double(box.min.x) << " " << format_double(box.min.y) << " "
        << format_double(box.min.z) << "\n";
    out << "bounds_max: " << format_double(box.max.x) << " " << format_double(box.max.y) << " "
        << format_double(box.max.z) << "\n";
    out << "diagonal: " << format_double(box.diagonal()) << "\n";
  }
  out << "colors: " << (cloud.has_colors() ? "yes" : "no") << "\n";
  out << "intensity: " << (cloud.has_intensity() ? "yes" : "no") << "\n";
  out << "labels: " << (cloud.has_labels() ? "yes" : "no") << "\n";
  if (cloud.has_labels()) {
    std::map<std::uint32_t, std::size_t> histogram;
    for (const std::uint32_t label : cloud.labels()) ++histogram[label];
    for (const auto& [label, count] : histogram) {
      out << "label " << (label == kUnlabeled ? std::string("unlabeled") : std::to_string(label))
          << ": " << count << "\n";
    }
  }
  return out.str();
}

}  // namespace

void add_cloud_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out) {
  {
    auto* cmd = app.add_subcommand("info", "Print point count, bounds, attributes and labels");
    auto input = std::make_shared<std::string>();
    cmd->add_option("cloud", *input, "Input cloud (.ply or .xyz)")->required();
    out.push_back({cmd, [input] {
                     const std::filesystem::path path(*input);
                     const CloudFormat format = detect_format(path);
                     emit(describe(load(path, format), format), {});
                   }});
  }
  {
    struct Flags {
      std::string input, output, reducer = "centroid", label_rule = "majority";
      double voxel = 0.02;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("downsample", "Voxel-grid downsampling");
    cmd->add_option("input", f->input, "Input cloud")->required();
    cmd->add_option("output", f->output, "Output cloud")->required();
    cmd->add_option("--voxel", f->voxel, "Voxel edge in meters")->capture_default_str();
    cmd->add_option("--reducer", f->reducer, "Point kept per voxel")
        ->check(CLI::IsMember({"centroid", "first", "nearest"}))
        ->capture_default_str();
    cmd->add_option("--label-rule", f->label_rule, "Label kept per voxel")
        ->check(CLI::IsMember({"majority", "first"}))
        ->capture_default_str();
    out.push_back({cmd, [f, &globals] {
                     if (!(f->voxel > 0.0)) throw UsageError("--voxel must be positive");
                     VoxelParams params;
                     params.edge = f->voxel;
                     params.reducer = f->reducer == "centroid" ? VoxelReducer::Centroid
                                      : f->reducer == "first"  ? VoxelReducer::First
                                                               : VoxelReducer::NearestToCentroid;
                     params.label_rule = f->label_rule == "majority" ? VoxelLabelRule::MajorityVote
                                                                     : VoxelLabelRule::First;
                     output_format(globals, f->output);
                     const PointCloud cloud = load_cloud(f->input);
                     const VoxelResult result = voxel_downsample(cloud, params);
                     save_cloud(globals, result.cloud, f->output);
                     std::cerr << cloud.size() << " -> " << result.cloud.size() << " points\n";
                   }});
  }
  {
    struct Flags {
      std::string input, output, config;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("augment", "Apply training-time augmentations");
    cmd->add_option("input", f->input, "Input cloud")->required();
    cmd->add_option("output", f->output, "Output cloud")->required();
    cmd->add_option("--config", f->config,
                    "key=value file (drop_point_max, drop_color_max, color_noise_sigma, "
                    "scale_range, rotate_z, flip_xy, shift_range, coord_noise_sigma, apply_prob); "
                    "defaults apply without it");
    out.push_back({cmd, [f, &globals] {
                     output_format(globals, f->output);
                     const AugmentConfig config =
                         f->config.empty() ? AugmentConfig{}
                                           : parse_augment_config(read_file(f->config));
                     const PointCloud cloud = load_cloud(f->input);
                     save_cloud(globals, augment(cloud, config, globals.seed).cloud, f->output);
                   }});
  }
  {
    struct Flags {
      std::string scene = "slab:10x10x1", output;
      double density = 100.0;
      std::uint32_t classes = 4;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("synth", "Generate a labeled synthetic scene");
    cmd->add_option("--scene", f->scene,
                    "kind:extent with kind in {slab, ball, rooms, corridor} and extent AxBxC "
                    "(ball: radius)")
        ->capture_default_str();
    cmd->add_option("--density", f->density, "Points per cubic meter")->capture_default_str();
    cmd->add_option("--classes", f->classes, "Number of classes (>= 2)")->capture_default_str();
    cmd->add_option("-o,--output", f->output, "Output cloud")->required();
    out.push_back({cmd, [f, &globals] {
                     const SceneSpec spec =
                         scene_flag(f->scene, f->density, f->classes, globals.seed);
                     output_format(globals, f->output);
                     const PointCloud cloud = generate(spec);
                     save_cloud(globals, cloud, f->output);
                     std::cerr << cloud.size() << " points\n";
                   }});
  }
}

}  // namespace subcloud::cli

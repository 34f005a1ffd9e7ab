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
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subcloud/centers.hpp"
#include "subcloud/crop.hpp"
#include "subcloud/io.hpp"
#include "subcloud/parallel.hpp"
#include "subcloud/point_cloud.hpp"
#include "subcloud/synth.hpp"

namespace subcloud::cli {

/// Bad flag values; reported with exit code 1 like parser errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;  ///< 0: SUBCLOUD_THREADS, else every hardware thread
  std::string format;    ///< output cloud format; empty: from the file extension

  Parallelism parallelism() const;
};

struct Command {
  CLI::App* app;
  std::function<void()> run;
};

void add_cloud_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out);
void add_crop_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out);
void add_eval_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out);
void add_run_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out);

/// Runs `parse` and turns library validation errors into UsageError, so that
/// flag problems are reported before any file is touched.
template <class Parse>
auto parse_flag(Parse&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

CropSpec crop_flag(const std::string& text);
CloudFormat output_format(const Globals& globals, const std::filesystem::path& path);

PointCloud load_cloud(const std::filesystem::path& path);
void save_cloud(const Globals& globals, const PointCloud& cloud, const std::filesystem::path& path,
                std::span<const ExtraColumn> extra = {});
CenterSet load_centers(const std::filesystem::path& path);

/// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& text, const std::filesystem::path& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Parses "AxBxC" (or a single value used for all three axes).
Vec3 parse_extent(const std::string& text);

/// "kind:extent", e.g. "rooms:20x15x3", "ball:10", "corridor:120x8x4".
SceneSpec scene_flag(const std::string& text, double density, std::uint32_t classes,
                     std::uint64_t seed);

/// Every file with `extension` in `dir`, sorted by name.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension);

/// Class count from the largest label in the given columns (sentinel ignored).
std::uint32_t infer_classes(std::initializer_list<std::span<const std::uint32_t>> columns);

}  // namespace subcloud::cli

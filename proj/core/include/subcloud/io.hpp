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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subcloud/point_cloud.hpp"

namespace subcloud {

enum class CloudFormat { PlyAscii, PlyBinaryLE, XyzText };

std::string_view to_string(CloudFormat format) noexcept;

struct LoadOptions {
  /// Column roles for XyzText, one character per column: x y z, r g b (color),
  /// i (intensity), l (label), '_' (skip). Empty selects a default from the
  /// column count: 3 "xyz", 4 "xyzi", 5 "xyzil", 6 "xyzrgb", 7 "xyzrgbl".
  std::string xyz_columns;
};

struct LoadDiagnostics {
  std::size_t ignored_properties = 0;
  std::vector<std::string> ignored_names;
};

/// A float column written after the standard ones (e.g. fused confidence).
struct ExtraColumn {
  std::string name;
  std::vector<float> values;
};

PointCloud load(const std::filesystem::path& path, CloudFormat format,
                const LoadOptions& options = {}, LoadDiagnostics* diagnostics = nullptr);

/// Picks the format from the extension and, for .ply, from the header line.
CloudFormat detect_format(const std::filesystem::path& path);

/// Writes through a temporary file renamed into place.
void save(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format,
          std::span<const ExtraColumn> extra = {});

/// Atomic text/binary file write used by every exporter in the library.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace subcloud

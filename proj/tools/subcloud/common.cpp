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
#include <charconv>
#include <cstdlib>
#include <iostream>

#include "commands.hpp"
#include "subcloud/error.hpp"

namespace subcloud::cli {

Parallelism Globals::parallelism() const {
  if (threads != 0) return {threads};
  if (const char* env = std::getenv("SUBCLOUD_THREADS"); env && *env) {
    unsigned value = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("SUBCLOUD_THREADS must be a non-negative integer");
    }
    return {value};
  }
  return {};
}

CropSpec crop_flag(const std::string& text) {
  return parse_flag([&] { return CropSpec::parse(text); });
}

CloudFormat output_format(const Globals& globals, const std::filesystem::path& path) {
  if (globals.format == "ply") return CloudFormat::PlyBinaryLE;
  if (globals.format == "ply-ascii") return CloudFormat::PlyAscii;
  if (globals.format == "xyz") return CloudFormat::XyzText;
  if (!globals.format.empty()) throw UsageError("unknown --format '" + globals.format + "'");
  const auto ext = path.extension().string();
  if (ext == ".xyz" || ext == ".txt") return CloudFormat::XyzText;
  return CloudFormat::PlyBinaryLE;
}

PointCloud load_cloud(const std::filesystem::path& path) {
  return load(path, detect_format(path));
}

void save_cloud(const Globals& globals, const PointCloud& cloud, const std::filesystem::path& path,
                std::span<const ExtraColumn> extra) {
  save(cloud, path, output_format(globals, path), extra);
}

CenterSet load_centers(const std::filesystem::path& path) {
  return centers_from_csv(read_file(path));
}

void emit(const std::string& text, const std::filesystem::path& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  write_file_atomic(path, text);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Vec3 parse_extent(const std::string& text) {
  std::vector<double> parts;
  std::string_view rest(text);
  while (true) {
    const auto cut = rest.find('x');
    const auto piece = rest.substr(0, cut);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
      throw UsageError("bad extent '" + text + "', expected AxBxC");
    }
    parts.push_back(v);
    if (cut == std::string_view::npos) break;
    rest.remove_prefix(cut + 1);
  }
  if (parts.size() == 1) return {parts[0], parts[0], parts[0]};
  if (parts.size() != 3) throw UsageError("bad extent '" + text + "', expected AxBxC");
  return {parts[0], parts[1], parts[2]};
}

SceneSpec scene_flag(const std::string& text, double density, std::uint32_t classes,
                     std::uint64_t seed) {
  return parse_flag([&] {
    SceneSpec spec;
    const auto colon = text.find(':');
    spec.kind = parse_scene_kind(text.substr(0, colon));
    if (colon != std::string::npos) spec.extent = parse_extent(text.substr(colon + 1));
    spec.density = density;
    spec.class_count = classes;
    spec.seed = seed;
    spec.validate();
    return spec;
  });
}

std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::string& extension) {
  if (!std::filesystem::is_directory(dir)) {
    raise(Errc::Io, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t infer_classes(std::initializer_list<std::span<const std::uint32_t>> columns) {
  std::uint32_t classes = 0;
  for (const auto column : columns) {
    for (const std::uint32_t label : column) {
      if (label != kUnlabeled) classes = std::max(classes, label + 1);
    }
  }
  if (classes == 0) raise(Errc::NoDefinedClasses, "no labels to infer a class count from");
  return classes;
}

}  // namespace subcloud::cli

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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "subcloud/point_cloud.hpp"

namespace subcloud::testing {

/// Reference generator for test data. Deliberately not the library's Philox
/// stream, so oracles never share randomness with the code under test.
using Gen = std::mt19937_64;

inline double uniform(Gen& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::size_t index_below(Gen& g, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(g);
}

inline Vec3 point_in_box(Gen& g, Vec3 lo, Vec3 hi) {
  return {uniform(g, lo.x, hi.x), uniform(g, lo.y, hi.y), uniform(g, lo.z, hi.z)};
}

inline std::vector<Vec3> box_points(Gen& g, std::size_t n, Vec3 lo, Vec3 hi) {
  std::vector<Vec3> out(n);
  for (auto& p : out) p = point_in_box(g, lo, hi);
  return out;
}

/// Uniform in the ball of radius r around the origin, by rejection.
inline std::vector<Vec3> ball_points(Gen& g, std::size_t n, double r) {
  std::vector<Vec3> out;
  out.reserve(n);
  while (out.size() < n) {
    const Vec3 p = point_in_box(g, {-r, -r, -r}, {r, r, r});
    if (p.x * p.x + p.y * p.y + p.z * p.z < r * r) out.push_back(p);
  }
  return out;
}

inline std::vector<std::uint32_t> random_labels(Gen& g, std::size_t n, std::uint32_t classes) {
  std::vector<std::uint32_t> out(n);
  std::uniform_int_distribution<std::uint32_t> d(0, classes - 1);
  for (auto& l : out) l = d(g);
  return out;
}

struct CloudShape {
  std::size_t n = 100;
  bool colors = false;
  bool intensity = false;
  bool labels = false;
  std::uint32_t classes = 4;
  double half_extent = 10.0;
};

inline PointCloud random_cloud(Gen& g, const CloudShape& s) {
  const double h = s.half_extent;
  auto coords = box_points(g, s.n, {-h, -h, -h}, {h, h, h});
  std::optional<std::vector<Rgb>> colors;
  std::optional<std::vector<float>> intensity;
  std::optional<std::vector<std::uint32_t>> labels;
  if (s.colors) {
    colors.emplace(s.n);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& c : *colors) {
      c = {static_cast<std::uint8_t>(byte(g)), static_cast<std::uint8_t>(byte(g)),
           static_cast<std::uint8_t>(byte(g))};
    }
  }
  if (s.intensity) {
    intensity.emplace(s.n);
    for (auto& v : *intensity) v = static_cast<float>(uniform(g, 0.0, 1.0));
  }
  if (s.labels) labels = random_labels(g, s.n, s.classes);
  return PointCloud(std::move(coords), std::move(colors), std::move(intensity), std::move(labels));
}

inline PointCloud ball_cloud(Gen& g, std::size_t n, double r) {
  return PointCloud(ball_points(g, n, r));
}

/// Normalized random distribution over `classes` entries.
inline std::vector<float> random_distribution(Gen& g, std::uint32_t classes) {
  std::vector<double> w(classes);
  double sum = 0.0;
  for (auto& v : w) sum += (v = uniform(g, 0.01, 1.0));
  std::vector<float> out(classes);
  double acc = 0.0;
  for (std::uint32_t c = 0; c + 1 < classes; ++c) acc += (out[c] = static_cast<float>(w[c] / sum));
  out[classes - 1] = static_cast<float>(1.0 - acc);
  return out;
}

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("subcloud_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace subcloud::testing

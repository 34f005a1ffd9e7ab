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

#include "subcloud/point_cloud.hpp"

#include <algorithm>
#include <string>

#include "subcloud/error.hpp"

namespace subcloud {
namespace {

template <typename T>
void check_column(const std::optional<std::vector<T>>& column, std::size_t n, const char* name) {
  if (column && column->size() != n) {
    raise(Errc::ShapeMismatch, std::string(name) + " column has " +
                                   std::to_string(column->size()) + " rows, expected " +
                                   std::to_string(n));
  }
}

template <typename T>
std::optional<std::vector<T>> gather(const std::optional<std::vector<T>>& column,
                                     std::span<const std::size_t> indices) {
  if (!column) return std::nullopt;
  std::vector<T> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back((*column)[i]);
  return out;
}

}  // namespace

PointCloud::PointCloud(std::vector<Vec3> coords, std::optional<std::vector<Rgb>> colors,
                       std::optional<std::vector<float>> intensity,
                       std::optional<std::vector<std::uint32_t>> labels)
    : coords_(std::move(coords)),
      colors_(std::move(colors)),
      intensity_(std::move(intensity)),
      labels_(std::move(labels)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!is_finite(coords_[i])) {
      raise(Errc::Format, "non-finite coordinate at point " + std::to_string(i));
    }
  }
  check_column(colors_, coords_.size(), "color");
  check_column(intensity_, coords_.size(), "intensity");
  check_column(labels_, coords_.size(), "label");
}

std::span<const Rgb> PointCloud::colors() const {
  if (!colors_) return {};
  return *colors_;
}

std::span<const float> PointCloud::intensity() const {
  if (!intensity_) return {};
  return *intensity_;
}

std::span<const std::uint32_t> PointCloud::labels() const {
  if (!labels_) return {};
  return *labels_;
}

PointCloud PointCloud::select(std::span<const std::size_t> indices) const {
  std::vector<Vec3> coords;
  coords.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= coords_.size()) raise(Errc::InvalidArgument, "index out of range");
    coords.push_back(coords_[i]);
  }
  return PointCloud(std::move(coords), gather(colors_, indices), gather(intensity_, indices),
                    gather(labels_, indices));
}

PointCloud PointCloud::with_labels(std::vector<std::uint32_t> labels) const {
  return PointCloud(coords_, colors_, intensity_, std::move(labels));
}

Aabb bounds(std::span<const Vec3> points) {
  if (points.empty()) raise(Errc::EmptyCloud, "bounds of an empty cloud");
  Aabb box{points.front(), points.front()};
  for (const Vec3& p : points) {
    box.min = {std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)};
    box.max = {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)};
  }
  return box;
}

Aabb bounds(const PointCloud& cloud) { return bounds(cloud.coords()); }

}  // namespace subcloud

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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subcloud/geometry.hpp"
#include "subcloud/parallel.hpp"
#include "subcloud/point_cloud.hpp"

namespace subcloud {

enum class CropKind : std::uint8_t { Spherical = 0, Exponential = 1, Gaussian = 2, Linear = 3 };

inline constexpr CropKind kAllCropKinds[] = {CropKind::Spherical, CropKind::Exponential,
                                             CropKind::Gaussian, CropKind::Linear};

std::string_view to_string(CropKind kind) noexcept;
CropKind parse_crop_kind(std::string_view name);

/// One of the four selection rules with its single parameter: the maximum
/// distance d_m (spherical, linear), the decay rate lambda in 1/m
/// (exponential) or the Gaussian scale sigma_d in m.
class CropSpec {
 public:
  /// Throws InvalidSpec unless parameter is positive and finite.
  CropSpec(CropKind kind, double parameter);

  static CropSpec spherical(double max_distance) { return {CropKind::Spherical, max_distance}; }
  static CropSpec exponential(double lambda) { return {CropKind::Exponential, lambda}; }
  static CropSpec gaussian(double sigma) { return {CropKind::Gaussian, sigma}; }
  static CropSpec linear(double max_distance) { return {CropKind::Linear, max_distance}; }

  /// "kind:param", e.g. "gaussian:3.5", "exp:0.5", "spherical:8", "linear:12".
  static CropSpec parse(std::string_view text);
  std::string to_string() const;

  CropKind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return parameter_; }
  bool has_finite_support() const noexcept {
    return kind_ == CropKind::Spherical || kind_ == CropKind::Linear;
  }

  friend bool operator==(const CropSpec&, const CropSpec&) = default;

 private:
  CropKind kind_;
  double parameter_;
};

/// p(d) for the crop spec: spherical 1 if d < d_m else 0; exponential exp(-lambda d);
/// Gaussian exp(-(d/sigma)^2); linear max(0, (d_m - d)/d_m).
double selection_probability(const CropSpec& spec, double d);

/// Euclidean distance of every point to `center`, in cloud order.
std::vector<double> distances(const PointCloud& cloud, Vec3 center);

struct Subcloud {
  std::vector<std::size_t> parent_indices;  ///< strictly increasing
  Vec3 center;
  std::vector<float> probs;  ///< selection probability of each selected point
  CropSpec spec = CropSpec::spherical(1.0);
  std::uint64_t center_id = 0;
  std::uint64_t seed_tag = 0;

  std::size_t size() const noexcept { return parent_indices.size(); }
  friend bool operator==(const Subcloud&, const Subcloud&) = default;
};

struct CropOptions {
  /// Infinite-support families only: probabilities below p_min are treated as
  /// zero, which bounds the search radius. 0 disables truncation (exact).
  double truncate_below = 0.0;
};

class SpatialIndex;

/// Bernoulli crop: point i is kept iff u_i < p(d_i), where u_i is draw i of the
/// counter stream keyed by (seed, center_id). Results depend only on those
/// inputs, never on thread count or on which crops ran before.
Subcloud crop(const PointCloud& cloud, Vec3 center, const CropSpec& spec, std::uint64_t seed,
              std::uint64_t center_id, const CropOptions& options = {});

/// Same result as the full scan, restricted to grid cells that intersect the
/// support radius when the crop spec (or truncation) bounds it.
Subcloud crop(const SpatialIndex& index, Vec3 center, const CropSpec& spec, std::uint64_t seed,
              std::uint64_t center_id, const CropOptions& options = {});

/// One crop per center, center_id = position in `centers`.
std::vector<Subcloud> crop_all(const SpatialIndex& index, std::span<const Vec3> centers,
                               const CropSpec& spec, std::uint64_t seed, Parallelism par,
                               const CropOptions& options = {});

struct CropStats {
  std::size_t cardinality = 0;
  double expected_cardinality = 0.0;
  double d_max = 0.0;
};

/// Sum of p(d_i) over the whole cloud.
double expected_cardinality(const PointCloud& cloud, Vec3 center, const CropSpec& spec);

/// Variance of the crop cardinality, sum of p_i (1 - p_i).
double cardinality_variance(const PointCloud& cloud, Vec3 center, const CropSpec& spec);

CropStats stats(const PointCloud& cloud, Vec3 center, const CropSpec& spec,
                const Subcloud& subcloud);

/// Distance at which p drops to `quantile_prob` (d_m for finite-support kinds).
double effective_radius(const CropSpec& spec, double quantile_prob);

}  // namespace subcloud

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

#include "subcloud/crop.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "subcloud/error.hpp"
#include "subcloud/rng.hpp"
#include "subcloud/spatial_index.hpp"

namespace subcloud {

std::string_view to_string(CropKind kind) noexcept {
  switch (kind) {
    case CropKind::Spherical: return "spherical";
    case CropKind::Exponential: return "exponential";
    case CropKind::Gaussian: return "gaussian";
    case CropKind::Linear: return "linear";
  }
  return "unknown";
}

CropKind parse_crop_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "spherical" || lower == "sphere") return CropKind::Spherical;
  if (lower == "exponential" || lower == "exp") return CropKind::Exponential;
  if (lower == "gaussian" || lower == "gauss") return CropKind::Gaussian;
  if (lower == "linear" || lower == "lin") return CropKind::Linear;
  raise(Errc::InvalidSpec, "unknown crop kind '" + std::string(name) + "'");
}

CropSpec::CropSpec(CropKind kind, double parameter) : kind_(kind), parameter_(parameter) {
  if (!(parameter > 0.0) || !std::isfinite(parameter)) {
    raise(Errc::InvalidSpec, std::string(subcloud::to_string(kind)) +
                                 " crop parameter must be positive and finite");
  }
}

CropSpec CropSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    raise(Errc::InvalidSpec, "crop spec '" + std::string(text) + "' is not kind:param");
  }
  const CropKind kind = parse_crop_kind(text.substr(0, colon));
  const std::string_view value = text.substr(colon + 1);
  double parameter = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parameter);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    raise(Errc::InvalidSpec, "bad crop parameter '" + std::string(value) + "'");
  }
  return CropSpec(kind, parameter);
}

std::string CropSpec::to_string() const {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), parameter_);
  return std::string(subcloud::to_string(kind_)) + ":" + std::string(buf, ptr);
}

double selection_probability(const CropSpec& spec, double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    raise(Errc::InvalidArgument, "distance must be finite and non-negative");
  }
  const double param = spec.parameter();
  switch (spec.kind()) {
    case CropKind::Spherical: return d < param ? 1.0 : 0.0;
    case CropKind::Exponential: return std::exp(-param * d);
    case CropKind::Gaussian: {
      const double r = d / param;
      return std::exp(-(r * r));
    }
    case CropKind::Linear: return std::max(0.0, (param - d) / param);
  }
  return 0.0;
}

std::vector<double> distances(const PointCloud& cloud, Vec3 center) {
  if (cloud.empty()) raise(Errc::EmptyCloud, "distances on an empty cloud");
  std::vector<double> out(cloud.size());
  const auto coords = cloud.coords();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = distance(coords[i], center);
  return out;
}

double effective_radius(const CropSpec& spec, double quantile_prob) {
  if (!(quantile_prob > 0.0 && quantile_prob < 1.0)) {
    raise(Errc::InvalidArgument, "quantile probability must lie in (0, 1)");
  }
  switch (spec.kind()) {
    case CropKind::Spherical:
    case CropKind::Linear: return spec.parameter();
    case CropKind::Exponential: return -std::log(quantile_prob) / spec.parameter();
    case CropKind::Gaussian: return spec.parameter() * std::sqrt(-std::log(quantile_prob));
  }
  return spec.parameter();
}

namespace {

void check_options(const CropOptions& options) {
  if (!(options.truncate_below >= 0.0 && options.truncate_below < 1.0)) {
    raise(Errc::InvalidArgument, "truncation probability must lie in [0, 1)");
  }
}

// Probability used for selection, honoring the optional truncation.
double effective_probability(const CropSpec& spec, double d, const CropOptions& options) {
  const double p = selection_probability(spec, d);
  return p < options.truncate_below ? 0.0 : p;
}

float stored_probability(double p) {
  return std::max(static_cast<float>(p), std::numeric_limits<float>::denorm_min());
}

Subcloud make_subcloud(Vec3 center, const CropSpec& spec, std::uint64_t seed,
                       std::uint64_t center_id) {
  Subcloud sub;
  sub.center = center;
  sub.spec = spec;
  sub.seed_tag = seed;
  sub.center_id = center_id;
  return sub;
}

}  // namespace

Subcloud crop(const PointCloud& cloud, Vec3 center, const CropSpec& spec, std::uint64_t seed,
              std::uint64_t center_id, const CropOptions& options) {
  if (cloud.empty()) raise(Errc::EmptyCloud, "crop of an empty cloud");
  check_options(options);
  const CounterRng rng(seed, center_id);
  Subcloud sub = make_subcloud(center, spec, seed, center_id);
  const auto coords = cloud.coords();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double p = effective_probability(spec, distance(coords[i], center), options);
    if (p <= 0.0) continue;
    if (p >= 1.0 || rng.uniform(i) < p) {
      sub.parent_indices.push_back(i);
      sub.probs.push_back(stored_probability(p));
    }
  }
  return sub;
}

Subcloud crop(const SpatialIndex& index, Vec3 center, const CropSpec& spec, std::uint64_t seed,
              std::uint64_t center_id, const CropOptions& options) {
  check_options(options);
  double radius = std::numeric_limits<double>::infinity();
  if (spec.has_finite_support()) {
    radius = spec.parameter();
  } else if (options.truncate_below > 0.0) {
    radius = effective_radius(spec, options.truncate_below) * (1.0 + 1e-9) + 1e-12;
  }
  if (!std::isfinite(radius)) return crop(index.cloud(), center, spec, seed, center_id, options);
  if (index.cloud().empty()) raise(Errc::EmptyCloud, "crop of an empty cloud");

  const CounterRng rng(seed, center_id);
  std::vector<std::pair<std::size_t, float>> picked;
  index.for_each_candidate(center, radius, [&](std::size_t i, const Vec3& p_i) {
    const double p = effective_probability(spec, distance(p_i, center), options);
    if (p <= 0.0) return;
    if (p >= 1.0 || rng.uniform(i) < p) picked.emplace_back(i, stored_probability(p));
  });
  std::sort(picked.begin(), picked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Subcloud sub = make_subcloud(center, spec, seed, center_id);
  sub.parent_indices.reserve(picked.size());
  sub.probs.reserve(picked.size());
  for (const auto& [i, p] : picked) {
    sub.parent_indices.push_back(i);
    sub.probs.push_back(p);
  }
  return sub;
}

std::vector<Subcloud> crop_all(const SpatialIndex& index, std::span<const Vec3> centers,
                               const CropSpec& spec, std::uint64_t seed, Parallelism par,
                               const CropOptions& options) {
  std::vector<Subcloud> out(centers.size());
  parallel_for(centers.size(), par,
               [&](std::size_t c) { out[c] = crop(index, centers[c], spec, seed, c, options); });
  return out;
}

double expected_cardinality(const PointCloud& cloud, Vec3 center, const CropSpec& spec) {
  double sum = 0.0;
  for (const Vec3& p : cloud.coords()) sum += selection_probability(spec, distance(p, center));
  return sum;
}

double cardinality_variance(const PointCloud& cloud, Vec3 center, const CropSpec& spec) {
  double sum = 0.0;
  for (const Vec3& p : cloud.coords()) {
    const double q = selection_probability(spec, distance(p, center));
    sum += q * (1.0 - q);
  }
  return sum;
}

CropStats stats(const PointCloud& cloud, Vec3 center, const CropSpec& spec,
                const Subcloud& subcloud) {
  CropStats s;
  s.cardinality = subcloud.size();
  s.expected_cardinality = expected_cardinality(cloud, center, spec);
  for (std::size_t i : subcloud.parent_indices) {
    s.d_max = std::max(s.d_max, distance(cloud[i], center));
  }
  return s;
}

}  // namespace subcloud

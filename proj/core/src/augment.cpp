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

#include "subcloud/augment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "subcloud/error.hpp"
#include "subcloud/rng.hpp"

namespace subcloud {

void AugmentConfig::validate() const {
  auto fraction = [](double v) { return v >= 0.0 && v <= 1.0; };
  auto sigma = [](double v) { return v >= 0.0 && std::isfinite(v); };
  if (!fraction(drop_point_max) || !fraction(drop_color_max) || !fraction(apply_prob)) {
    raise(Errc::InvalidConfig, "fractions must lie in [0, 1]");
  }
  if (!sigma(color_noise_sigma) || !sigma(coord_noise_sigma) || !sigma(shift_range)) {
    raise(Errc::InvalidConfig, "sigmas and shift range must be non-negative");
  }
  if (!(scale_min > 0.0) || !(scale_max >= scale_min) || !std::isfinite(scale_max)) {
    raise(Errc::InvalidConfig, "scale range must be positive and ordered");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_value(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    raise(Errc::InvalidConfig, "bad value '" + std::string(v) + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  raise(Errc::InvalidConfig, "bad boolean '" + std::string(v) + "' for " + std::string(key));
}

}  // namespace

AugmentConfig parse_augment_config(std::string_view text, AugmentConfig config) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      raise(Errc::InvalidConfig, "expected key = value, got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      if (key != "scale_range") raise(Errc::InvalidConfig, "array value for " + std::string(key));
      const auto inner = value.substr(1, value.size() - 2);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos) raise(Errc::InvalidConfig, "scale_range needs 2 values");
      config.scale_min = parse_value(key, trim(inner.substr(0, comma)));
      config.scale_max = parse_value(key, trim(inner.substr(comma + 1)));
      continue;
    }
    if (key == "drop_point_max") config.drop_point_max = parse_value(key, value);
    else if (key == "drop_color_max") config.drop_color_max = parse_value(key, value);
    else if (key == "color_noise_sigma") config.color_noise_sigma = parse_value(key, value);
    else if (key == "scale_min") config.scale_min = parse_value(key, value);
    else if (key == "scale_max") config.scale_max = parse_value(key, value);
    else if (key == "rotate_z") config.rotate_z = parse_bool(key, value);
    else if (key == "flip_xy") config.flip_xy = parse_bool(key, value);
    else if (key == "shift_range") config.shift_range = parse_value(key, value);
    else if (key == "coord_noise_sigma") config.coord_noise_sigma = parse_value(key, value);
    else if (key == "apply_prob") config.apply_prob = parse_value(key, value);
    else raise(Errc::InvalidConfig, "unknown key '" + std::string(key) + "'");
  }
  config.validate();
  return config;
}

AugmentResult augment(const PointCloud& cloud, const AugmentConfig& config, std::uint64_t seed) {
  config.validate();
  RngCursor rng(seed, streams::kAugment);
  const std::size_t n = cloud.size();

  // Point drop: a uniform fraction in [0, drop_point_max], exact count.
  const double drop_fraction = rng.uniform(0.0, config.drop_point_max);
  const auto drop_count = static_cast<std::size_t>(std::floor(drop_fraction * n));
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < drop_count; ++k) {
    std::swap(perm[k], perm[k + rng.below(n - k)]);
  }
  std::vector<std::size_t> kept(perm.begin() + static_cast<std::ptrdiff_t>(drop_count), perm.end());
  std::sort(kept.begin(), kept.end());

  const PointCloud selected = cloud.select(kept);
  std::vector<Vec3> coords(selected.coords().begin(), selected.coords().end());
  std::optional<std::vector<Rgb>> colors;
  const std::size_t m = coords.size();

  if (selected.has_colors()) {
    colors.emplace(selected.colors().begin(), selected.colors().end());
    const double color_fraction = rng.uniform(0.0, config.drop_color_max);
    const auto color_drops = static_cast<std::size_t>(std::floor(color_fraction * m));
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    for (std::size_t k = 0; k < color_drops; ++k) {
      std::swap(order[k], order[k + rng.below(m - k)]);
      (*colors)[order[k]] = {0, 0, 0};
    }
    if (rng.bernoulli(config.apply_prob) && config.color_noise_sigma > 0.0) {
      for (auto& rgb : *colors) {
        for (auto& channel : rgb) {
          const double v = channel / 255.0 + rng.normal(0.0, config.color_noise_sigma);
          channel = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
        }
      }
    }
  }

  if (rng.bernoulli(config.apply_prob)) {
    const double s = rng.uniform(config.scale_min, config.scale_max);
    for (auto& p : coords) p = p * s;
  }
  if (config.rotate_z && rng.bernoulli(config.apply_prob)) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (auto& p : coords) p = {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
  }
  if (config.flip_xy) {
    if (rng.bernoulli(config.apply_prob)) {
      for (auto& p : coords) p.x = -p.x;
    }
    if (rng.bernoulli(config.apply_prob)) {
      for (auto& p : coords) p.y = -p.y;
    }
  }
  if (rng.bernoulli(config.apply_prob)) {
    const Vec3 shift{rng.uniform(-config.shift_range, config.shift_range),
                     rng.uniform(-config.shift_range, config.shift_range),
                     rng.uniform(-config.shift_range, config.shift_range)};
    for (auto& p : coords) p = p + shift;
  }
  if (rng.bernoulli(config.apply_prob) && config.coord_noise_sigma > 0.0) {
    for (auto& p : coords) {
      p = p + Vec3{rng.normal(0.0, config.coord_noise_sigma), rng.normal(0.0, config.coord_noise_sigma),
                   rng.normal(0.0, config.coord_noise_sigma)};
    }
  }

  std::optional<std::vector<float>> intensity;
  if (selected.has_intensity()) intensity.emplace(selected.intensity().begin(), selected.intensity().end());
  std::optional<std::vector<std::uint32_t>> labels;
  if (selected.has_labels()) labels.emplace(selected.labels().begin(), selected.labels().end());

  return {PointCloud(std::move(coords), std::move(colors), std::move(intensity), std::move(labels)),
          std::move(kept)};
}

}  // namespace subcloud

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

#include "subcloud/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "subcloud/error.hpp"
#include "subcloud/rng.hpp"

namespace subcloud {

std::string_view to_string(SceneKind kind) noexcept {
  switch (kind) {
    case SceneKind::UniformSlab: return "slab";
    case SceneKind::UniformBall: return "ball";
    case SceneKind::Rooms: return "rooms";
    case SceneKind::Corridor: return "corridor";
  }
  return "?";
}

SceneKind parse_scene_kind(std::string_view name) {
  if (name == "slab" || name == "uniform_slab") return SceneKind::UniformSlab;
  if (name == "ball" || name == "uniform_ball") return SceneKind::UniformBall;
  if (name == "rooms") return SceneKind::Rooms;
  if (name == "corridor") return SceneKind::Corridor;
  raise(Errc::InvalidSpec, "unknown scene kind '" + std::string(name) + "'");
}

namespace {

constexpr double kShell = 0.05;
constexpr double kMinCorridorLength = 100.0;
constexpr double kBarrierLength = 30.0;

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

class SceneBuilder {
 public:
  SceneBuilder(double density, std::uint64_t seed) : density_(density), rng_(seed, streams::kSynth) {}

  /// Poisson(density * volume) points uniform in the box.
  void fill(const Aabb& box, std::uint32_t label) {
    const Vec3 e = box.extent();
    const double volume = e.x * e.y * e.z;
    if (!(volume > 0.0)) return;
    std::poisson_distribution<std::uint64_t> count(density_ * volume);
    const std::uint64_t n = count(rng_);
    for (std::uint64_t k = 0; k < n; ++k) {
      coords_.push_back({rng_.uniform(box.min.x, box.max.x), rng_.uniform(box.min.y, box.max.y),
                         rng_.uniform(box.min.z, box.max.z)});
      labels_.push_back(label);
    }
  }

  /// Thin shells on the four sides and the top of a box standing on the floor.
  void box_surface(const Aabb& b, std::uint32_t label) {
    const double t = kShell;
    fill({{b.min.x, b.min.y, b.max.z - t}, b.max}, label);
    fill({b.min, {b.min.x + t, b.max.y, b.max.z - t}}, label);
    fill({{b.max.x - t, b.min.y, b.min.z}, {b.max.x, b.max.y, b.max.z - t}}, label);
    fill({{b.min.x + t, b.min.y, b.min.z}, {b.max.x - t, b.min.y + t, b.max.z - t}}, label);
    fill({{b.min.x + t, b.max.y - t, b.min.z}, {b.max.x - t, b.max.y, b.max.z - t}}, label);
  }

  RngCursor& rng() { return rng_; }
  std::vector<Vec3>& coords() { return coords_; }
  std::vector<std::uint32_t>& labels() { return labels_; }

  PointCloud build() { return PointCloud(std::move(coords_), {}, {}, std::move(labels_)); }

 private:
  double density_;
  RngCursor rng_;
  std::vector<Vec3> coords_;
  std::vector<std::uint32_t> labels_;
};

std::uint32_t band(double v, double extent, std::uint32_t classes) {
  const auto c = static_cast<std::int64_t>(std::floor(v / extent * classes));
  return static_cast<std::uint32_t>(std::clamp<std::int64_t>(c, 0, classes - 1));
}

PointCloud slab(const SceneSpec& s) {
  SceneBuilder b(s.density, s.seed);
  b.fill({{0, 0, 0}, s.extent}, 0);
  for (std::size_t i = 0; i < b.coords().size(); ++i) {
    b.labels()[i] = band(b.coords()[i].x, s.extent.x, s.class_count);
  }
  return b.build();
}

PointCloud ball(const SceneSpec& s) {
  const double r = s.extent.x;
  SceneBuilder b(s.density, s.seed);
  std::poisson_distribution<std::uint64_t> count(s.density * 4.0 / 3.0 * std::numbers::pi * r * r * r);
  const std::uint64_t n = count(b.rng());
  auto& rng = b.rng();
  while (b.coords().size() < n) {
    const Vec3 p{rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r)};
    if (squared_norm(p) >= r * r) continue;
    const double azimuth = std::atan2(p.y, p.x) + std::numbers::pi;
    b.coords().push_back(p);
    b.labels().push_back(band(azimuth, 2.0 * std::numbers::pi, s.class_count));
  }
  return b.build();
}

PointCloud rooms(const SceneSpec& s) {
  const Vec3 e = s.extent;
  const double t = kShell;
  SceneBuilder b(s.density, s.seed);
  const int rx = std::max(1, static_cast<int>(std::lround(e.x / 5.0)));
  const int ry = std::max(1, static_cast<int>(std::lround(e.y / 5.0)));
  const double wx = e.x / rx;
  const double wy = e.y / ry;

  b.fill({{0, 0, 0}, {e.x, e.y, t}}, 0);
  for (int i = 0; i <= rx; ++i) {
    const double x = std::clamp(i * wx, t / 2, e.x - t / 2);
    b.fill({{x - t / 2, 0, t}, {x + t / 2, e.y, e.z}}, 1);
  }
  for (int j = 0; j <= ry; ++j) {
    const double y = std::clamp(j * wy, t / 2, e.y - t / 2);
    b.fill({{0, y - t / 2, t}, {e.x, y + t / 2, e.z}}, 1);
  }

  if (s.class_count > 2) {
    const std::uint32_t object_classes = s.class_count - 2;
    const int room_count = rx * ry;
    const int objects = std::max<int>(static_cast<int>(object_classes), 2 * room_count);
    auto& rng = b.rng();
    for (int k = 0; k < objects; ++k) {
      const int room = k % room_count;
      const double x0 = (room % rx) * wx;
      const double y0 = (room / rx) * wy;
      const double sx = std::min(rng.uniform(0.4, 1.5), 0.4 * wx);
      const double sy = std::min(rng.uniform(0.4, 1.5), 0.4 * wy);
      const double sz = std::min(rng.uniform(0.4, 1.2), 0.8 * e.z);
      const double px = x0 + rng.uniform(0.1 * wx, 0.9 * wx - sx);
      const double py = y0 + rng.uniform(0.1 * wy, 0.9 * wy - sy);
      b.box_surface({{px, py, t}, {px + sx, py + sy, t + sz}},
                    2 + static_cast<std::uint32_t>(k) % object_classes);
    }
  }
  return b.build();
}

PointCloud corridor(const SceneSpec& s) {
  const Vec3 e = s.extent;
  const double t = kShell;
  SceneBuilder b(s.density, s.seed);
  b.fill({{0, 0, 0}, {e.x, e.y, t}}, 0);

  for (const double y : {1.0, e.y - 1.0}) {
    for (double x = 0.0; x + kBarrierLength <= e.x; x += kBarrierLength + 5.0) {
      b.fill({{x, y - t / 2, t}, {x + kBarrierLength, y + t / 2, 1.0}}, 1);
    }
  }
  if (s.class_count > 2) {
    for (double x = 7.5; x < e.x; x += 15.0) {
      b.box_surface({{x - 0.1, 0.4, t}, {x + 0.1, 0.6, e.z}}, 2);
    }
  }
  if (s.class_count > 3) {
    const std::uint32_t box_classes = s.class_count - 3;
    const int boxes = std::max<int>(static_cast<int>(box_classes), static_cast<int>(e.x / 10.0));
    auto& rng = b.rng();
    for (int k = 0; k < boxes; ++k) {
      const double len = rng.uniform(1.0, 4.0);
      const double wid = rng.uniform(0.8, 2.0);
      const double x = rng.uniform(0.0, e.x - len);
      const double y = rng.uniform(1.5, std::max(1.5, e.y - 1.5 - wid));
      b.box_surface({{x, y, t}, {x + len, y + wid, t + rng.uniform(0.8, 1.8)}},
                    3 + static_cast<std::uint32_t>(k) % box_classes);
    }
  }
  return b.build();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void SceneSpec::validate() const {
  if (!positive(density)) raise(Errc::InvalidSpec, "density must be positive");
  if (class_count < 2) raise(Errc::InvalidSpec, "class_count must be at least 2");
  if (!positive(extent.x)) raise(Errc::InvalidSpec, "extent must be positive");
  if (kind == SceneKind::UniformBall) return;
  if (!positive(extent.y) || !positive(extent.z)) raise(Errc::InvalidSpec, "extent must be positive");
  if (kind == SceneKind::Rooms && (extent.x < 2.0 || extent.y < 2.0 || extent.z < 0.5)) {
    raise(Errc::InvalidSpec, "rooms need a footprint of at least 2 x 2 m and 0.5 m height");
  }
  if (kind == SceneKind::Corridor) {
    if (extent.x < kMinCorridorLength) raise(Errc::InvalidSpec, "corridor must be at least 100 m long");
    if (extent.y < 4.0 || extent.z < 1.0) {
      raise(Errc::InvalidSpec, "corridor needs at least 4 m width and 1 m height");
    }
  }
}

PointCloud generate(const SceneSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SceneKind::UniformSlab: return slab(spec);
    case SceneKind::UniformBall: return ball(spec);
    case SceneKind::Rooms: return rooms(spec);
    case SceneKind::Corridor: return corridor(spec);
  }
  raise(Errc::InvalidSpec, "unknown scene kind");
}

void MockPredictorSpec::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(base_error) || !unit(max_flip) || !unit(mismatch_error)) {
    raise(Errc::InvalidSpec, "predictor error rates must lie in [0, 1]");
  }
  if (!(error_slope >= 0.0) || !std::isfinite(error_slope) || !(context_gain >= 0.0) ||
      !(context_radius >= 0.0) || !std::isfinite(context_radius)) {
    raise(Errc::InvalidSpec, "predictor slope and context terms must be non-negative");
  }
}

std::vector<std::uint32_t> gather_labels(std::span<const std::uint32_t> labels,
                                         const Subcloud& subcloud) {
  std::vector<std::uint32_t> out;
  out.reserve(subcloud.size());
  for (const std::size_t i : subcloud.parent_indices) {
    if (i >= labels.size()) raise(Errc::ShapeMismatch, "subcloud index beyond label column");
    out.push_back(labels[i]);
  }
  return out;
}

SubcloudPrediction mock_predict(const PointCloud& cloud, const Subcloud& subcloud,
                                std::span<const std::uint32_t> gt, std::uint32_t classes,
                                const MockPredictorSpec& spec) {
  spec.validate();
  if (classes == 0) raise(Errc::InvalidArgument, "classes must be positive");
  if (gt.size() != subcloud.size()) {
    raise(Errc::ShapeMismatch, "gt holds " + std::to_string(gt.size()) + " labels for " +
                                   std::to_string(subcloud.size()) + " subcloud points");
  }

  double extra = 0.0;
  if (spec.context_gain > 0.0 && spec.context_radius > 0.0) {
    double d_max = 0.0;
    for (const std::size_t i : subcloud.parent_indices) {
      d_max = std::max(d_max, distance(cloud[i], subcloud.center));
    }
    extra += spec.context_gain * std::max(0.0, 1.0 - d_max / spec.context_radius);
  }
  if (spec.trained_kind && *spec.trained_kind != subcloud.spec.kind()) extra += spec.mismatch_error;

  const CounterRng rng(splitmix64(spec.seed ^ streams::kMockPredictor), subcloud.center_id);
  SubcloudPrediction out{subcloud.center_id, classes, std::vector<float>(subcloud.size() * classes)};
  for (std::size_t j = 0; j < subcloud.size(); ++j) {
    const std::size_t i = subcloud.parent_indices[j];
    std::uint32_t label = gt[j];
    if (label == kUnlabeled) {
      label = 0;
    } else if (label >= classes) {
      raise(Errc::ClassOutOfRange, "label " + std::to_string(label) + " with " +
                                       std::to_string(classes) + " classes");
    } else if (classes > 1) {
      const double d = distance(cloud[i], subcloud.center);
      const double flip = spec.base_error >= 1.0
                              ? 1.0
                              : std::min(spec.max_flip, spec.base_error + spec.error_slope * d + extra);
      const auto b = rng.block(i);
      if (to_unit_double(b[0], b[1]) < flip) {
        const std::uint64_t r = std::uint64_t{b[2]} << 32 | b[3];
        label = static_cast<std::uint32_t>((label + 1 + r % (classes - 1)) % classes);
      }
    }
    out.probs[j * classes + label] = 1.0f;
  }
  return out;
}

std::vector<std::uint32_t> predicted_labels(const SubcloudPrediction& prediction) {
  std::vector<std::uint32_t> out(prediction.rows());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto row = prediction.row(j);
    out[j] = static_cast<std::uint32_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

}  // namespace subcloud

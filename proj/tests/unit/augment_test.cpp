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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "subcloud/augment.hpp"
#include "subcloud/error.hpp"

namespace subcloud {
namespace {

using testing::Gen;

AugmentConfig nothing() {
  AugmentConfig c;
  c.drop_point_max = 0.0;
  c.drop_color_max = 0.0;
  c.color_noise_sigma = 0.0;
  c.scale_min = c.scale_max = 1.0;
  c.rotate_z = false;
  c.flip_xy = false;
  c.shift_range = 0.0;
  c.coord_noise_sigma = 0.0;
  c.apply_prob = 0.0;
  return c;
}

double max_distance_error(const PointCloud& a, const PointCloud& b, double factor = 1.0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); i += 7) {
    for (std::size_t j = i + 1; j < a.size(); j += 5) {
      worst = std::max(worst, std::abs(distance(b[i], b[j]) - factor * distance(a[i], a[j])));
    }
  }
  return worst;
}

TEST(Augment, IdentityConfig) {
  Gen g(1);
  const PointCloud cloud = testing::random_cloud(g, {.n = 300, .colors = true, .labels = true});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const AugmentResult r = augment(cloud, nothing(), seed);
    EXPECT_EQ(r.cloud, cloud);
    ASSERT_EQ(r.kept.size(), cloud.size());
    for (std::size_t i = 0; i < r.kept.size(); ++i) EXPECT_EQ(r.kept[i], i);
  }
}

TEST(Augment, RetainedFractionAveragesNinetyPercent) {
  Gen g(2);
  const PointCloud cloud = testing::random_cloud(g, {.n = 10000});
  AugmentConfig c = nothing();
  c.drop_point_max = 0.2;
  const int seeds = 1000;
  double sum = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    sum += static_cast<double>(augment(cloud, c, seed).cloud.size()) / cloud.size();
  }
  // Drop fraction ~ U[0, 0.2]: mean 0.1, sd 0.2/sqrt(12).
  EXPECT_NEAR(sum / seeds, 0.9, 3.0 * (0.2 / std::sqrt(12.0)) / std::sqrt(seeds));
}

TEST(Augment, ZRotationIsAnIsometryKeepingZ) {
  Gen g(3);
  const PointCloud cloud = testing::random_cloud(g, {.n = 400});
  AugmentConfig c = nothing();
  c.rotate_z = true;
  c.apply_prob = 1.0;
  const AugmentResult r = augment(cloud, c, 11);
  ASSERT_EQ(r.cloud.size(), cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) EXPECT_EQ(r.cloud[i].z, cloud[i].z);
  EXPECT_LT(max_distance_error(cloud, r.cloud), 1e-9);
  EXPECT_NE(r.cloud[0].x, cloud[0].x);
}

TEST(AugmentProperty, RigidOpsPreserveDistancesAndScaleMultiplies) {
  Gen g(4);
  for (int trial = 0; trial < 20; ++trial) {
    const PointCloud cloud = testing::random_cloud(g, {.n = 200});
    AugmentConfig rigid = nothing();
    rigid.rotate_z = rigid.flip_xy = true;
    rigid.shift_range = 2.0;
    rigid.apply_prob = 1.0;
    EXPECT_LT(max_distance_error(cloud, augment(cloud, rigid, trial).cloud), 1e-9);

    AugmentConfig scaled = nothing();
    scaled.scale_min = scaled.scale_max = 1.07;
    scaled.apply_prob = 1.0;
    EXPECT_LT(max_distance_error(cloud, augment(cloud, scaled, trial).cloud, 1.07), 1e-9);
  }
}

TEST(AugmentProperty, DropKeepsRowsAlignedAndIsDeterministic) {
  Gen g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const PointCloud cloud =
        testing::random_cloud(g, {.n = 500, .colors = true, .intensity = true, .labels = true});
    const AugmentConfig c;  // defaults
    const AugmentResult a = augment(cloud, c, trial);
    const AugmentResult b = augment(cloud, c, trial);
    EXPECT_EQ(a.cloud, b.cloud);
    EXPECT_EQ(a.kept, b.kept);
    EXPECT_TRUE(std::is_sorted(a.kept.begin(), a.kept.end()));
    ASSERT_EQ(a.kept.size(), a.cloud.size());
    EXPECT_GE(a.cloud.size(), static_cast<std::size_t>(0.8 * cloud.size()));
    for (std::size_t j = 0; j < a.kept.size(); ++j) {
      ASSERT_LT(a.kept[j], cloud.size());
      EXPECT_EQ(a.cloud.labels()[j], cloud.labels()[a.kept[j]]);
      EXPECT_EQ(a.cloud.intensity()[j], cloud.intensity()[a.kept[j]]);
    }
  }
}

TEST(Augment, ColorDropZeroesAtMostTheConfiguredShare) {
  Gen g(6);
  const PointCloud cloud = testing::random_cloud(g, {.n = 2000, .colors = true});
  AugmentConfig c = nothing();
  c.drop_color_max = 0.3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AugmentResult r = augment(cloud, c, seed);
    std::size_t zeroed = 0;
    std::size_t was_zero = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      zeroed += r.cloud.colors()[i] == Rgb{0, 0, 0};
      was_zero += cloud.colors()[i] == Rgb{0, 0, 0};
      EXPECT_EQ(r.cloud[i], cloud[i]);
    }
    EXPECT_LE(zeroed, was_zero + static_cast<std::size_t>(0.3 * cloud.size()));
  }
}

TEST(AugmentConfigText, ParseOverridesAndErrors) {
  const AugmentConfig c = parse_augment_config(
      "# training preset\ndrop_point_max = 0.1\nscale_range = [0.8, 1.2]\nrotate_z = false\n");
  EXPECT_EQ(c.drop_point_max, 0.1);
  EXPECT_EQ(c.scale_min, 0.8);
  EXPECT_EQ(c.scale_max, 1.2);
  EXPECT_FALSE(c.rotate_z);
  EXPECT_EQ(c.drop_color_max, 0.3);
  EXPECT_THROW(parse_augment_config("no_such_key = 1\n"), Error);
  EXPECT_THROW(parse_augment_config("drop_point_max = 2\n"), Error);
  EXPECT_THROW(parse_augment_config("scale_range = [1.2, 0.8]\n"), Error);
  EXPECT_THROW(parse_augment_config("drop_point_max\n"), Error);
}

}  // namespace
}  // namespace subcloud

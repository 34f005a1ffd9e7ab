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
#include <fstream>
#include <limits>

#include "generators.hpp"
#include "subcloud/error.hpp"
#include "subcloud/io.hpp"

namespace subcloud {
namespace {

using testing::Gen;
using testing::TempDir;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no subcloud::Error thrown";
  return Errc::Unreachable;
}

TEST(PointCloud, RejectsNonFiniteCoordinates) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { PointCloud({{0, 0, 0}, {nan, 0, 0}}); }), Errc::Format);
  EXPECT_EQ(code_of([&] { PointCloud({{0, 0, std::numeric_limits<double>::infinity()}}); }),
            Errc::Format);
}

TEST(PointCloud, RejectsShortAttributeColumns) {
  EXPECT_EQ(code_of([] { PointCloud({{0, 0, 0}, {1, 1, 1}}, std::vector<Rgb>(1)); }),
            Errc::ShapeMismatch);
  EXPECT_EQ(code_of([] {
              PointCloud({{0, 0, 0}}, std::nullopt, std::nullopt, std::vector<std::uint32_t>(2));
            }),
            Errc::ShapeMismatch);
}

TEST(PointCloud, SelectKeepsAttributesAligned) {
  const PointCloud cloud({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, std::nullopt,
                         std::vector<float>{0.f, .5f, 1.f}, std::vector<std::uint32_t>{7, 8, 9});
  const std::vector<std::size_t> pick{2, 0};
  const PointCloud s = cloud.select(pick);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].x, 2.0);
  EXPECT_EQ(s.labels()[0], 9u);
  EXPECT_EQ(s.intensity()[1], 0.f);
}

TEST(Bounds, SinglePoint) {
  const Aabb box = bounds(PointCloud({{1.5, -2, 3}}));
  EXPECT_EQ(box.min, (Vec3{1.5, -2, 3}));
  EXPECT_EQ(box.max, (Vec3{1.5, -2, 3}));
}

TEST(Bounds, TwoPoints) {
  const Aabb box = bounds(PointCloud({{0, 0, 0}, {1, 2, 3}}));
  EXPECT_EQ(box.min, (Vec3{0, 0, 0}));
  EXPECT_EQ(box.max, (Vec3{1, 2, 3}));
}

TEST(Bounds, MatchesLinearScan) {
  Gen g(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PointCloud cloud = testing::random_cloud(g, {.n = 100});
    Vec3 lo{1e300, 1e300, 1e300};
    Vec3 hi{-1e300, -1e300, -1e300};
    for (const Vec3& p : cloud.coords()) {
      for (int a = 0; a < 3; ++a) {
        lo[a] = std::min(lo[a], p[a]);
        hi[a] = std::max(hi[a], p[a]);
      }
    }
    const Aabb box = bounds(cloud);
    EXPECT_EQ(box.min, lo);
    EXPECT_EQ(box.max, hi);
  }
}

TEST(Bounds, EmptyCloudThrows) {
  EXPECT_EQ(code_of([] { bounds(PointCloud{}); }), Errc::EmptyCloud);
}

TEST(Load, AsciiPlyWithColors) {
  TempDir dir;
  write_text(dir / "c.ply",
             "ply\nformat ascii 1.0\ncomment made by hand\nelement vertex 3\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n"
             "0 0 0 255 0 0\n1 0 0 0 255 0\n0 1 0.5 0 0 255\n");
  const PointCloud cloud = load(dir / "c.ply", CloudFormat::PlyAscii);
  ASSERT_EQ(cloud.size(), 3u);
  ASSERT_TRUE(cloud.has_colors());
  EXPECT_EQ(cloud.colors()[1], (Rgb{0, 255, 0}));
  EXPECT_EQ(cloud[2].z, 0.5);
  EXPECT_FALSE(cloud.has_labels());
}

TEST(Load, XyzWithIntensity) {
  TempDir dir;
  write_text(dir / "c.xyz", "0 0 0 0.25\n1 2 3 0.75\n");
  const PointCloud cloud = load(dir / "c.xyz", CloudFormat::XyzText);
  ASSERT_EQ(cloud.size(), 2u);
  ASSERT_TRUE(cloud.has_intensity());
  EXPECT_FLOAT_EQ(cloud.intensity()[1], 0.75f);
  EXPECT_EQ(cloud[1].y, 2.0);
}

TEST(Load, ShortVertexListIsFormatError) {
  TempDir dir;
  write_text(dir / "short.ply",
             "ply\nformat ascii 1.0\nelement vertex 5\nproperty float x\nproperty float y\n"
             "property float z\nend_header\n0 0 0\n1 1 1\n2 2 2\n3 3 3\n");
  EXPECT_EQ(code_of([&] { load(dir / "short.ply", CloudFormat::PlyAscii); }), Errc::Format);
}

TEST(Load, NonFiniteCoordinateIsFormatError) {
  TempDir dir;
  write_text(dir / "nan.xyz", "0 0 0\nnan 1 1\n");
  EXPECT_EQ(code_of([&] { load(dir / "nan.xyz", CloudFormat::XyzText); }), Errc::Format);
}

TEST(Load, BigEndianIsRejected) {
  TempDir dir;
  write_text(dir / "be.ply",
             "ply\nformat binary_big_endian 1.0\nelement vertex 0\nproperty float x\n"
             "property float y\nproperty float z\nend_header\n");
  EXPECT_EQ(code_of([&] { load(dir / "be.ply", CloudFormat::PlyBinaryLE); }), Errc::Format);
}

TEST(Load, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load("/nonexistent/cloud.ply", CloudFormat::PlyAscii); }), Errc::Io);
}

TEST(Load, UnknownPropertiesAreCounted) {
  TempDir dir;
  write_text(dir / "extra.ply",
             "ply\nformat ascii 1.0\nelement vertex 2\nproperty float x\nproperty float y\n"
             "property float z\nproperty float nx\nproperty int label\nproperty float curvature\n"
             "end_header\n0 0 0 1 4 0.1\n1 1 1 0 2 0.2\n");
  LoadDiagnostics diag;
  const PointCloud cloud = load(dir / "extra.ply", CloudFormat::PlyAscii, {}, &diag);
  EXPECT_EQ(diag.ignored_properties, 2u);
  ASSERT_TRUE(cloud.has_labels());
  EXPECT_EQ(cloud.labels()[0], 4u);
}

TEST(Load, DetectFormat) {
  TempDir dir;
  write_text(dir / "a.ply", "ply\nformat ascii 1.0\nelement vertex 0\nend_header\n");
  write_text(dir / "b.ply", "ply\nformat binary_little_endian 1.0\nelement vertex 0\nend_header\n");
  write_text(dir / "c.xyz", "");
  EXPECT_EQ(detect_format(dir / "a.ply"), CloudFormat::PlyAscii);
  EXPECT_EQ(detect_format(dir / "b.ply"), CloudFormat::PlyBinaryLE);
  EXPECT_EQ(detect_format(dir / "c.xyz"), CloudFormat::XyzText);
}

TEST(Save, BinaryRoundTripIsBitExactOnEveryColumn) {
  TempDir dir;
  Gen g(5);
  for (int trial = 0; trial < 25; ++trial) {
    testing::CloudShape shape;
    shape.n = testing::index_below(g, 300) + 1;
    shape.colors = g() % 2;
    shape.intensity = g() % 2;
    shape.labels = g() % 2;
    shape.half_extent = testing::uniform(g, 0.1, 1000.0);
    const PointCloud cloud = testing::random_cloud(g, shape);
    save(cloud, dir / "rt.ply", CloudFormat::PlyBinaryLE);
    EXPECT_EQ(load(dir / "rt.ply", CloudFormat::PlyBinaryLE), cloud) << "trial " << trial;
  }
}

TEST(Save, AsciiRoundTripWithinMicrometer) {
  TempDir dir;
  Gen g(6);
  const PointCloud cloud = testing::random_cloud(g, {.n = 200, .colors = true, .labels = true});
  save(cloud, dir / "rt.ply", CloudFormat::PlyAscii);
  const PointCloud back = load(dir / "rt.ply", CloudFormat::PlyAscii);
  ASSERT_EQ(back.size(), cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_LE(distance(back[i], cloud[i]), 1e-6);
  }
  EXPECT_TRUE(std::ranges::equal(back.labels(), cloud.labels()));
  EXPECT_TRUE(std::ranges::equal(back.colors(), cloud.colors()));
}

TEST(Save, XyzRoundTrip) {
  TempDir dir;
  Gen g(7);
  const PointCloud cloud = testing::random_cloud(g, {.n = 50, .intensity = true});
  save(cloud, dir / "rt.xyz", CloudFormat::XyzText);
  const PointCloud back = load(dir / "rt.xyz", CloudFormat::XyzText);
  ASSERT_EQ(back.size(), cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) EXPECT_LE(distance(back[i], cloud[i]), 1e-6);
}

TEST(Save, UnwritablePathIsIoError) {
  TempDir dir;
  write_text(dir / "file", "x");
  // A regular file used as a directory cannot be written through, even as root.
  EXPECT_EQ(code_of([&] { save(PointCloud({{0, 0, 0}}), dir / "file" / "out.ply",
                               CloudFormat::PlyBinaryLE); }),
            Errc::Io);
}

TEST(Save, ExtraColumnsAreWrittenAndIgnoredOnLoad) {
  TempDir dir;
  const PointCloud cloud({{0, 0, 0}, {1, 1, 1}});
  const ExtraColumn conf{"confidence", {0.5f, 1.0f}};
  save(cloud, dir / "x.ply", CloudFormat::PlyAscii, std::span(&conf, 1));
  LoadDiagnostics diag;
  EXPECT_EQ(load(dir / "x.ply", CloudFormat::PlyAscii, {}, &diag), cloud);
  ASSERT_EQ(diag.ignored_names.size(), 1u);
  EXPECT_EQ(diag.ignored_names[0], "confidence");
}

}  // namespace
}  // namespace subcloud

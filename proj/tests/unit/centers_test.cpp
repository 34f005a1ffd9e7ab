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
#include <set>
#include <tuple>

#include "generators.hpp"
#include "subcloud/centers.hpp"
#include "subcloud/error.hpp"

namespace subcloud {
namespace {

using testing::Gen;

TEST(GridCenters, OneCellOneCenter) {
  const PointCloud cloud({{0, 0, 0}, {0.2, 0.3, 0.1}, {0.5, 0.5, 0.5}});
  const CenterSet set = grid_centers(cloud, 1.0);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.centers[0], (Vec3{0.5, 0.5, 0.5}));
  EXPECT_EQ(set.method, CenterMethod::Grid);
  EXPECT_EQ(set.method_param, 1.0);
}

TEST(GridCenters, FarApartPoints) {
  EXPECT_EQ(grid_centers(PointCloud({{0, 0, 0}, {100, 0, 0}}), 1.0).size(), 2u);
}

TEST(GridCenters, CountMatchesBinningOracle) {
  Gen g(1);
  const auto pts = testing::box_points(g, 10000, {0, 0, 0}, {10, 10, 2});
  const PointCloud cloud(pts);
  const Vec3 lo = bounds(cloud).min;
  std::set<std::tuple<long, long, long>> cells;
  for (const Vec3& p : pts) {
    cells.emplace(static_cast<long>(std::floor((p.x - lo.x) / 2.0)),
                  static_cast<long>(std::floor((p.y - lo.y) / 2.0)),
                  static_cast<long>(std::floor((p.z - lo.z) / 2.0)));
  }
  EXPECT_EQ(grid_centers(cloud, 2.0).size(), cells.size());
}

TEST(GridCenters, AscendingLexicographicOrder) {
  Gen g(2);
  const CenterSet set = grid_centers(testing::random_cloud(g, {.n = 3000}), 2.5);
  for (std::size_t k = 1; k < set.size(); ++k) {
    const Vec3 a = set.centers[k - 1];
    const Vec3 b = set.centers[k];
    EXPECT_TRUE(std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z));
  }
}

TEST(GridCenters, IndependentOfPointOrder) {
  Gen g(3);
  auto pts = testing::box_points(g, 2000, {-5, -5, -1}, {5, 5, 1});
  const CenterSet a = grid_centers(PointCloud(pts), 1.3);
  std::shuffle(pts.begin(), pts.end(), g);
  EXPECT_EQ(grid_centers(PointCloud(pts), 1.3).centers, a.centers);
}

TEST(DefaultCellEdge, EqualsEffectiveRadiusOverOverlap) {
  EXPECT_EQ(default_cell_edge(CropSpec::spherical(3)), 3.0);
  EXPECT_EQ(default_cell_edge(CropSpec::spherical(3), 2.0), 1.5);
  EXPECT_NEAR(default_cell_edge(CropSpec::gaussian(4)), 4.0, 1e-12);
}

TEST(Coverage, GridTheoremHoldsOnRandomClouds) {
  Gen g(4);
  for (int trial = 0; trial < 30; ++trial) {
    const PointCloud cloud =
        testing::random_cloud(g, {.n = 2000, .half_extent = testing::uniform(g, 1.0, 20.0)});
    const double dm = testing::uniform(g, 0.5, 6.0);
    const double edge = dm * testing::uniform(g, 0.3, 2.0 / std::sqrt(3.0)) * (1.0 - 1e-9);
    const CoverageReport r =
        coverage_report(cloud, grid_centers(cloud, edge).centers, CropSpec::spherical(dm));
    EXPECT_EQ(r.uncovered_count, 0u) << "trial " << trial;
    EXPECT_EQ(r.min_max_prob, 1.0);
  }
}

TEST(Coverage, OverlapRaisesMeanVisits) {
  Gen g(5);
  const PointCloud cloud = testing::random_cloud(g, {.n = 3000, .half_extent = 8});
  const CropSpec spec = CropSpec::spherical(3.0);
  double previous = 0.0;
  for (const double k : {1.0, 1.5, 2.0, 3.0}) {
    const double visits =
        coverage_report(cloud, grid_centers(cloud, 3.0 / k).centers, spec).mean_visits();
    EXPECT_GE(visits, previous) << "k=" << k;
    previous = visits;
  }
}

TEST(Coverage, NoCentersMeansNoVisits) {
  Gen g(6);
  const PointCloud cloud = testing::random_cloud(g, {.n = 50});
  const CoverageReport r = coverage_report(cloud, {}, CropSpec::spherical(3));
  EXPECT_EQ(r.uncovered_count, 50u);
  EXPECT_TRUE(std::ranges::all_of(r.visits, [](auto v) { return v == 0; }));
}

TEST(Coverage, SingleCenterEqualsDirectEvaluation) {
  Gen g(7);
  const PointCloud cloud = testing::random_cloud(g, {.n = 500, .half_extent = 4});
  Vec3 centroid{};
  for (const Vec3& p : cloud.coords()) centroid = centroid + p * (1.0 / cloud.size());
  for (const CropSpec spec : {CropSpec::gaussian(2), CropSpec::linear(5)}) {
    const std::vector<Vec3> one{centroid};
    const CoverageReport r = coverage_report(cloud, one, spec);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const double p = selection_probability(spec, distance(cloud[i], centroid));
      EXPECT_EQ(r.max_prob[i], p);
      EXPECT_EQ(r.visits[i], p > 0.0 ? 1u : 0u);
    }
  }
}

TEST(IterativeCenters, SinglePoint) {
  const PointCloud cloud({{1, 2, 3}});
  const CenterSet set = iterative_random_centers(cloud, CropSpec::gaussian(1), 0.5, 9);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.centers[0], (Vec3{1, 2, 3}));
}

TEST(IterativeCenters, HugeSphereNeedsOneCenter) {
  Gen g(8);
  const PointCloud cloud = testing::random_cloud(g, {.n = 300, .half_extent = 2});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(iterative_random_centers(cloud, CropSpec::spherical(10), 0.5, seed).size(), 1u);
  }
}

TEST(IterativeCenters, ThresholdReachedEverywhere) {
  Gen g(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = testing::box_points(g, 1000, {0, 0, 0}, {10, 10, 1});
    const PointCloud cloud(pts);
    for (const CropSpec spec : {CropSpec::gaussian(1), CropSpec::linear(2), CropSpec::exponential(1)}) {
      const CenterSet set = iterative_random_centers(cloud, spec, 0.5, trial);
      EXPECT_GE(coverage_report(cloud, set.centers, spec).min_max_prob, 0.5);
    }
  }
}

TEST(IterativeCenters, DeterministicUnderSeed) {
  Gen g(10);
  const PointCloud cloud = testing::random_cloud(g, {.n = 800, .half_extent = 5});
  const auto a = iterative_random_centers(cloud, CropSpec::gaussian(1.5), 0.4, 3);
  const auto b = iterative_random_centers(cloud, CropSpec::gaussian(1.5), 0.4, 3);
  const auto c = iterative_random_centers(cloud, CropSpec::gaussian(1.5), 0.4, 4);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_NE(a.centers, c.centers);
}

TEST(IterativeCenters, CentersAreCloudPoints) {
  Gen g(11);
  const PointCloud cloud = testing::random_cloud(g, {.n = 400, .half_extent = 5});
  const auto set = iterative_random_centers(cloud, CropSpec::spherical(2), 0.5, 1);
  for (const Vec3& c : set.centers) {
    EXPECT_NE(std::find(cloud.coords().begin(), cloud.coords().end(), c), cloud.coords().end());
  }
}

TEST(IterativeCenters, ThresholdValidation) {
  const PointCloud cloud({{0, 0, 0}, {1, 1, 1}});
  try {
    iterative_random_centers(cloud, CropSpec::gaussian(1), 1.5, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Unsatisfiable);
  }
  EXPECT_THROW(iterative_random_centers(cloud, CropSpec::gaussian(1), 0.0, 0), Error);
  EXPECT_EQ(iterative_random_centers(cloud, CropSpec::gaussian(0.1), 1.0, 0).size(), 2u);
}

TEST(CentersCsv, RoundTrip) {
  Gen g(12);
  const PointCloud cloud = testing::random_cloud(g, {.n = 500});
  const CenterSet set = iterative_random_centers(cloud, CropSpec::gaussian(3), 0.5, 2);
  const CenterSet back = centers_from_csv(centers_to_csv(set));
  EXPECT_EQ(back.centers, set.centers);
  EXPECT_EQ(back.method, CenterMethod::IterativeRandom);
  EXPECT_EQ(back.method_param, 0.5);
  EXPECT_THROW(centers_from_csv("center_id,x,y,z,method,param\n0,1,2\n"), Error);
}

}  // namespace
}  // namespace subcloud

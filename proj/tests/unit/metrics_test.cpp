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
#include <numeric>

#include "generators.hpp"
#include "subcloud/error.hpp"
#include "subcloud/metrics.hpp"

namespace subcloud {
namespace {

using testing::Gen;

TEST(Confusion, PerfectPrediction) {
  const std::vector<std::uint32_t> labels{0, 1, 2, 0, 1, 2, 0, 0, 1, 1};
  const ConfusionMatrix m = confusion(labels, labels, 3);
  for (std::uint32_t g = 0; g < 3; ++g) {
    for (std::uint32_t p = 0; p < 3; ++p) {
      if (g != p) EXPECT_EQ(m.count(g, p), 0u);
    }
  }
  EXPECT_EQ(iou(m).miou, 1.0);
}

TEST(Confusion, AllWrongIntoOneColumn) {
  const std::vector<std::uint32_t> gt{0, 1, 0, 1};
  const std::vector<std::uint32_t> pred{2, 2, 2, 2};
  const ConfusionMatrix m = confusion(pred, gt, 3);
  EXPECT_EQ(m.count(0, 2) + m.count(1, 2), 4u);
  EXPECT_EQ(m.false_positives(2), 4u);
  EXPECT_EQ(iou(m).miou, 0.0);
}

TEST(Confusion, MatchesTallyOracle) {
  Gen g(1);
  const auto gt = testing::random_labels(g, 1000, 5);
  const auto pred = testing::random_labels(g, 1000, 5);
  const ConfusionMatrix m = confusion(pred, gt, 5);
  std::vector<std::uint64_t> tally(25, 0);
  for (std::size_t i = 0; i < gt.size(); ++i) ++tally[gt[i] * 5 + pred[i]];
  for (std::uint32_t a = 0; a < 5; ++a) {
    for (std::uint32_t b = 0; b < 5; ++b) EXPECT_EQ(m.count(a, b), tally[a * 5 + b]);
  }
  EXPECT_EQ(m.evaluated(), 1000u);
}

TEST(Confusion, SentinelsAndRangeErrors) {
  const std::vector<std::uint32_t> gt{0, kUnlabeled, 1};
  const std::vector<std::uint32_t> pred{0, 1, kUnlabeled};
  const ConfusionMatrix m = confusion(pred, gt, 2);
  EXPECT_EQ(m.ignored(), 1u);
  EXPECT_EQ(m.missed(1), 1u);
  EXPECT_EQ(m.false_negatives(1), 1u);
  EXPECT_EQ(iou(m).per_class[1], 0.0);
  const std::vector<std::uint32_t> bad{3};
  const std::vector<std::uint32_t> ok{0};
  EXPECT_THROW(confusion(bad, ok, 2), Error);
  EXPECT_THROW(confusion(ok, bad, 2), Error);
  EXPECT_THROW(confusion(std::vector<std::uint32_t>{0, 1}, ok, 2), Error);
}

TEST(Iou, HandTally) {
  // counts [[3,1],[1,3]]
  const std::vector<std::uint32_t> gt{0, 0, 0, 0, 1, 1, 1, 1};
  const std::vector<std::uint32_t> pred{0, 0, 0, 1, 1, 1, 1, 0};
  const IouResult r = iou(confusion(pred, gt, 2));
  EXPECT_DOUBLE_EQ(*r.per_class[0], 0.6);
  EXPECT_DOUBLE_EQ(*r.per_class[1], 0.6);
  EXPECT_DOUBLE_EQ(r.miou, 0.6);
}

TEST(Iou, AbsentClassExcludedOrZero) {
  const std::vector<std::uint32_t> labels{0, 1, 0};
  const ConfusionMatrix m = confusion(labels, labels, 3);
  const IouResult ex = iou(m, UndefinedIou::Exclude);
  EXPECT_FALSE(ex.per_class[2].has_value());
  EXPECT_EQ(ex.defined_classes, 2u);
  EXPECT_EQ(ex.miou, 1.0);
  EXPECT_DOUBLE_EQ(iou(m, UndefinedIou::Zero).miou, 2.0 / 3.0);
  EXPECT_THROW(iou(ConfusionMatrix(3)), Error);
}

TEST(IouProperty, PermutationInvarianceAndRange) {
  Gen g(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t c = 2 + g() % 6;
    const std::size_t n = 1 + testing::index_below(g, 500);
    auto gt = testing::random_labels(g, n, c);
    auto pred = gt;
    for (auto& p : pred) {
      if (g() % 3 == 0) p = static_cast<std::uint32_t>(g() % c);
    }
    const ConfusionMatrix m = confusion(pred, gt, c);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    std::vector<std::uint32_t> gt2(n), pred2(n);
    for (std::size_t i = 0; i < n; ++i) {
      gt2[i] = gt[perm[i]];
      pred2[i] = pred[perm[i]];
    }
    EXPECT_EQ(confusion(pred2, gt2, c), m);
    const double miou = iou(m).miou;
    EXPECT_GE(miou, 0.0);
    EXPECT_LE(miou, 1.0);
    EXPECT_EQ(miou == 1.0, pred == gt);
  }
}

TEST(SensitivityProbability, SphericalUsesRelativeDistance) {
  EXPECT_DOUBLE_EQ(sensitivity_probability(CropSpec::spherical(4), 1.0), 0.75);
  EXPECT_EQ(sensitivity_probability(CropSpec::gaussian(2), 2.0),
            selection_probability(CropSpec::gaussian(2), 2.0));
}

class SensitivityFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    Gen g(3);
    cloud_ = testing::random_cloud(g, {.n = 400, .half_extent = 3});
    gt_ = testing::random_labels(g, cloud_.size(), 3);
    for (int k = 0; k < 6; ++k) {
      subclouds_.push_back(crop(cloud_, cloud_[k * 13], CropSpec::spherical(2.5), 0, k));
    }
    for (const auto& s : subclouds_) {
      std::vector<std::uint32_t> p;
      for (const std::size_t i : s.parent_indices) p.push_back(g() % 4 ? gt_[i] : (gt_[i] + 1) % 3);
      predicted_.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < subclouds_.size(); ++k) views_.push_back({&subclouds_[k], predicted_[k]});
  }

  PointCloud cloud_;
  std::vector<std::uint32_t> gt_;
  std::vector<Subcloud> subclouds_;
  std::vector<std::vector<std::uint32_t>> predicted_;
  std::vector<SubcloudLabels> views_;
};

TEST_F(SensitivityFixture, FullThresholdEqualsPlainSubcloudMetric) {
  const std::vector<double> tau{1.0};
  const auto rows = distance_sensitivity(cloud_, gt_, views_, tau, 3);
  ASSERT_EQ(rows.size(), 1u);
  std::size_t occurrences = 0;
  for (const auto& s : subclouds_) occurrences += s.size();
  EXPECT_EQ(rows[0].points, occurrences);
  EXPECT_EQ(*rows[0].miou, iou(subcloud_confusion(views_, gt_, 3)).miou);
}

TEST_F(SensitivityFixture, ThresholdBelowEveryPointIsEmpty) {
  const std::vector<double> tau{-0.5};
  const auto rows = distance_sensitivity(cloud_, gt_, views_, tau, 3);
  EXPECT_EQ(rows[0].points, 0u);
  EXPECT_FALSE(rows[0].miou.has_value());
}

TEST_F(SensitivityFixture, EmptyThresholdSetThrows) {
  EXPECT_THROW(distance_sensitivity(cloud_, gt_, views_, {}, 3), Error);
}

TEST_F(SensitivityFixture, PooledConfusionMatchesOccurrenceTally) {
  const ConfusionMatrix m = subcloud_confusion(views_, gt_, 3);
  std::uint64_t diagonal = 0;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < subclouds_.size(); ++k) {
    for (std::size_t j = 0; j < subclouds_[k].size(); ++j) {
      ++total;
      diagonal += predicted_[k][j] == gt_[subclouds_[k].parent_indices[j]];
    }
  }
  EXPECT_EQ(m.evaluated(), total);
  EXPECT_EQ(m.true_positives(0) + m.true_positives(1) + m.true_positives(2), diagonal);
}

TEST(Thresholds, Defaults) {
  EXPECT_EQ(default_sensitivity_thresholds(),
            (std::vector<double>{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}));
}

TEST(MetricsCsv, Layout) {
  const std::vector<std::uint32_t> labels{0, 1};
  const ConfusionMatrix m = confusion(labels, labels, 2);
  const std::string csv = metrics_to_csv(m, iou(m));
  EXPECT_EQ(csv, "class_id,tp,fp,fn,iou\n0,1,0,0,1\n1,1,0,0,1\nmiou,2,0,0,1\n");
}

}  // namespace
}  // namespace subcloud

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
#include <map>

#include "generators.hpp"
#include "subcloud/error.hpp"
#include "subcloud/fusion.hpp"

namespace subcloud {
namespace {

using testing::Gen;

Subcloud make_subcloud(std::vector<std::size_t> indices, std::uint64_t id) {
  Subcloud s;
  s.probs.assign(indices.size(), 1.0f);
  s.parent_indices = std::move(indices);
  s.center_id = id;
  return s;
}

SubcloudPrediction one_hot(std::uint64_t id, std::uint32_t classes,
                           const std::vector<std::uint32_t>& labels) {
  SubcloudPrediction p{id, classes, std::vector<float>(labels.size() * classes)};
  for (std::size_t j = 0; j < labels.size(); ++j) p.probs[j * classes + labels[j]] = 1.0f;
  return p;
}

struct Instance {
  std::vector<Subcloud> subclouds;
  std::vector<SubcloudPrediction> predictions;
};

Instance random_instance(Gen& g, std::size_t points, std::size_t count, std::uint32_t classes) {
  Instance inst;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < points; ++i) {
      if (g() % 3 == 0) idx.push_back(i);
    }
    Subcloud s = make_subcloud(idx, 100 + 7 * k);
    for (auto& p : s.probs) p = static_cast<float>(testing::uniform(g, 0.05, 1.0));
    SubcloudPrediction pred{s.center_id, classes, {}};
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const auto row = testing::random_distribution(g, classes);
      pred.probs.insert(pred.probs.end(), row.begin(), row.end());
    }
    inst.subclouds.push_back(std::move(s));
    inst.predictions.push_back(std::move(pred));
  }
  return inst;
}

TEST(Fusion, SingleCoveringVoteReproducesArgmax) {
  const auto s = make_subcloud({0, 1, 2}, 0);
  PredictionBuffer buffer(3, 3);
  buffer.accumulate(s, one_hot(0, 3, {2, 0, 1}));
  const FusionResult r = buffer.finalize();
  EXPECT_EQ(r.labels, (std::vector<std::uint32_t>{2, 0, 1}));
  EXPECT_TRUE(r.uncovered.empty());
  EXPECT_EQ(r.confidence, (std::vector<float>{1, 1, 1}));
}

TEST(Fusion, TwoOpposingVotesAverage) {
  PredictionBuffer buffer(2, 2);
  buffer.accumulate(make_subcloud({0, 1}, 0), one_hot(0, 2, {0, 0}));
  buffer.accumulate(make_subcloud({1}, 1), one_hot(1, 2, {1}));
  const auto mean = buffer.mean_distribution();
  EXPECT_EQ(mean[2], 0.5);
  EXPECT_EQ(mean[3], 0.5);
  const FusionResult r = buffer.finalize();
  EXPECT_EQ(r.labels[1], 0u);  // exact tie goes to class 0
  EXPECT_EQ(r.confidence[1], 0.5f);
}

TEST(Fusion, EmptyBufferLeavesEverythingUncovered) {
  const FusionResult r = PredictionBuffer(4, 3).finalize();
  EXPECT_EQ(r.uncovered, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_TRUE(std::ranges::all_of(r.labels, [](auto l) { return l == kUnlabeled; }));
}

TEST(Fusion, MatchesBruteForceVoteTable) {
  Gen g(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t classes = 2 + g() % 5;
    const Instance inst = random_instance(g, 100, 10, classes);
    PredictionBuffer buffer(100, classes);
    for (std::size_t k = 0; k < inst.subclouds.size(); ++k) {
      buffer.accumulate(inst.subclouds[k], inst.predictions[k]);
    }
    // Vote table: every (point, class) vote listed, then averaged per point.
    std::map<std::size_t, std::vector<std::vector<double>>> table;
    for (std::size_t k = 0; k < inst.subclouds.size(); ++k) {
      for (std::size_t j = 0; j < inst.subclouds[k].size(); ++j) {
        const auto row = inst.predictions[k].row(j);
        table[inst.subclouds[k].parent_indices[j]].emplace_back(row.begin(), row.end());
      }
    }
    const auto fused = buffer.mean_distribution();
    const FusionResult result = buffer.finalize();
    for (std::size_t i = 0; i < 100; ++i) {
      const auto it = table.find(i);
      if (it == table.end()) {
        EXPECT_EQ(result.labels[i], kUnlabeled);
        continue;
      }
      std::vector<double> mean(classes, 0.0);
      for (const auto& vote : it->second) {
        for (std::uint32_t c = 0; c < classes; ++c) mean[c] += vote[c] / it->second.size();
      }
      double total = 0.0;
      for (std::uint32_t c = 0; c < classes; ++c) {
        EXPECT_NEAR(fused[i * classes + c], mean[c], 1e-12);
        total += fused[i * classes + c];
      }
      EXPECT_NEAR(total, 1.0, 1e-6);
      const auto best = std::max_element(mean.begin(), mean.end()) - mean.begin();
      EXPECT_EQ(result.labels[i], static_cast<std::uint32_t>(best));
    }
  }
}

TEST(Fusion, OrderIndependentBitForBit) {
  Gen g(2);
  const Instance inst = random_instance(g, 100, 10, 4);
  std::vector<std::size_t> order(inst.subclouds.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;

  auto run = [&](const std::vector<std::size_t>& ord, FusionWeight w) {
    PredictionBuffer buffer(100, 4);
    for (const std::size_t k : ord) buffer.accumulate(inst.subclouds[k], inst.predictions[k], w);
    return std::pair(buffer.mean_distribution(), buffer.finalize());
  };
  for (const FusionWeight w : {FusionWeight::Uniform, FusionWeight::BySelectionProb}) {
    const auto reference = run(order, w);
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
      std::shuffle(order.begin(), order.end(), g);
      const auto other = run(order, w);
      EXPECT_EQ(other.first, reference.first);
      EXPECT_EQ(other.second.labels, reference.second.labels);
      EXPECT_EQ(other.second.confidence, reference.second.confidence);
    }
  }
}

TEST(Fusion, MergedBuffersEqualOneBuffer) {
  Gen g(3);
  const Instance inst = random_instance(g, 100, 10, 3);
  PredictionBuffer all(100, 3);
  PredictionBuffer a(100, 3);
  PredictionBuffer b(100, 3);
  for (std::size_t k = 0; k < inst.subclouds.size(); ++k) {
    all.accumulate(inst.subclouds[k], inst.predictions[k]);
    (k % 2 ? a : b).accumulate(inst.subclouds[k], inst.predictions[k]);
  }
  a.merge(std::move(b));
  EXPECT_EQ(a.mean_distribution(), all.mean_distribution());
}

TEST(Fusion, WeightedVotesUseSelectionProbabilities) {
  auto s0 = make_subcloud({0}, 0);
  auto s1 = make_subcloud({0}, 1);
  s0.probs = {0.75f};
  s1.probs = {0.25f};
  PredictionBuffer buffer(1, 2);
  buffer.accumulate(s0, one_hot(0, 2, {0}), FusionWeight::BySelectionProb);
  buffer.accumulate(s1, one_hot(1, 2, {1}), FusionWeight::BySelectionProb);
  const auto mean = buffer.mean_distribution();
  EXPECT_DOUBLE_EQ(mean[0], 0.75);
  EXPECT_DOUBLE_EQ(mean[1], 0.25);
}

TEST(Fusion, ShapeAndClassErrors) {
  PredictionBuffer buffer(3, 2);
  auto expect_code = [](auto&& f, Errc code) {
    try {
      f();
      ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code([&] { buffer.accumulate(make_subcloud({0, 1}, 0), one_hot(0, 3, {0, 1})); },
              Errc::ClassCountMismatch);
  expect_code([&] { buffer.accumulate(make_subcloud({0, 1}, 0), one_hot(0, 2, {0})); },
              Errc::ShapeMismatch);
  expect_code([&] { buffer.accumulate(make_subcloud({0, 5}, 0), one_hot(0, 2, {0, 1})); },
              Errc::ShapeMismatch);
  expect_code([&] { buffer.accumulate(make_subcloud({0}, 4), one_hot(3, 2, {0})); },
              Errc::ShapeMismatch);
  SubcloudPrediction bad{0, 2, {0.7f, 0.7f}};
  expect_code([&] { buffer.accumulate(make_subcloud({0}, 0), bad); }, Errc::ShapeMismatch);
  buffer.accumulate(make_subcloud({0}, 9), one_hot(9, 2, {1}));
  expect_code([&] { buffer.accumulate(make_subcloud({1}, 9), one_hot(9, 2, {1})); },
              Errc::ShapeMismatch);
}

TEST(Fusion, ArgmaxTiesToSmallest) {
  const std::vector<double> row{0.2, 0.4, 0.4};
  EXPECT_EQ(argmax_class(row), 1u);
}

TEST(PredictionFile, RoundTripAndCorruption) {
  testing::TempDir dir;
  Gen g(4);
  SubcloudPrediction p{42, 3, {}};
  for (int j = 0; j < 5; ++j) {
    const auto row = testing::random_distribution(g, 3);
    p.probs.insert(p.probs.end(), row.begin(), row.end());
  }
  write_prediction(p, dir / prediction_file_name(42));
  const SubcloudPrediction back = read_prediction(dir / "42.pred");
  EXPECT_EQ(back.center_id, 42u);
  EXPECT_EQ(back.classes, 3u);
  EXPECT_EQ(back.probs, p.probs);
  std::string bytes = encode_prediction(p);
  EXPECT_THROW(decode_prediction(std::string_view(bytes).substr(0, bytes.size() - 1)), Error);
  bytes[0] = 'X';
  EXPECT_THROW(decode_prediction(bytes), Error);
}

}  // namespace
}  // namespace subcloud

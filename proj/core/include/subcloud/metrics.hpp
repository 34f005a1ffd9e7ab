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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subcloud/crop.hpp"

namespace subcloud {

/// Rows are ground truth, columns predictions. Points whose ground truth is
/// kUnlabeled are skipped and counted in ignored(); a kUnlabeled prediction
/// (an uncovered point) counts as a miss for its ground-truth class.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::uint32_t classes);

  void add(std::uint32_t gt, std::uint32_t pred);
  void merge(const ConfusionMatrix& other);

  std::uint32_t classes() const noexcept { return classes_; }
  std::uint64_t count(std::uint32_t gt, std::uint32_t pred) const {
    return counts_[std::size_t{gt} * classes_ + pred];
  }
  std::uint64_t missed(std::uint32_t gt) const { return missed_[gt]; }
  std::uint64_t ignored() const noexcept { return ignored_; }
  std::uint64_t evaluated() const noexcept { return evaluated_; }

  std::uint64_t true_positives(std::uint32_t c) const;
  std::uint64_t false_positives(std::uint32_t c) const;
  std::uint64_t false_negatives(std::uint32_t c) const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::uint32_t classes_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> missed_;
  std::uint64_t ignored_ = 0;
  std::uint64_t evaluated_ = 0;
};

ConfusionMatrix confusion(std::span<const std::uint32_t> pred, std::span<const std::uint32_t> gt,
                          std::uint32_t classes);

enum class UndefinedIou { Exclude, Zero };

struct IouResult {
  std::vector<std::optional<double>> per_class;  ///< nullopt where TP+FP+FN = 0
  double miou = 0.0;
  std::size_t defined_classes = 0;
};

/// IoU_c = TP/(TP+FP+FN). Undefined classes are left out of the mean
/// (Exclude) or enter it as 0 (Zero). Throws NoDefinedClasses.
IouResult iou(const ConfusionMatrix& matrix, UndefinedIou policy = UndefinedIou::Exclude);

/// Labels predicted for one subcloud, aligned with its parent_indices.
struct SubcloudLabels {
  const Subcloud* subcloud = nullptr;
  std::span<const std::uint32_t> predicted;
};

/// Confusion pooled over every (subcloud, point) occurrence.
ConfusionMatrix subcloud_confusion(std::span<const SubcloudLabels> evaluations,
                                   std::span<const std::uint32_t> gt, std::uint32_t classes);

/// Per-point probability used for distance analysis: 1 - d/d_m for spherical
/// crops (whose selection probability is flat), p(d) otherwise.
double sensitivity_probability(const CropSpec& spec, double d);

struct SensitivityRow {
  double tau = 0.0;
  std::optional<double> miou;  ///< nullopt when no point (or no class) qualifies
  std::size_t points = 0;
};

/// For each threshold tau, mIoU over the (subcloud, point) occurrences whose
/// sensitivity probability is <= tau.
std::vector<SensitivityRow> distance_sensitivity(const PointCloud& cloud,
                                                 std::span<const std::uint32_t> gt,
                                                 std::span<const SubcloudLabels> evaluations,
                                                 std::span<const double> thresholds,
                                                 std::uint32_t classes,
                                                 UndefinedIou policy = UndefinedIou::Exclude);

/// {0.2, 0.3, ..., 0.9}
std::vector<double> default_sensitivity_thresholds();

/// class_id,tp,fp,fn,iou rows followed by a summary row.
std::string metrics_to_csv(const ConfusionMatrix& matrix, const IouResult& result);
/// tau_p,miou,points
std::string sensitivity_to_csv(std::span<const SensitivityRow> rows);

}  // namespace subcloud

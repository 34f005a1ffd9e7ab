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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "subcloud/crop.hpp"

namespace subcloud {

/// Class distributions for one subcloud; row j belongs to parent_indices[j].
struct SubcloudPrediction {
  std::uint64_t center_id = 0;
  std::uint32_t classes = 0;
  std::vector<float> probs;  ///< rows x classes, row-major

  std::size_t rows() const noexcept { return classes ? probs.size() / classes : 0; }
  std::span<const float> row(std::size_t j) const { return {probs.data() + j * classes, classes}; }
};

enum class FusionWeight { Uniform, BySelectionProb };

struct FusionResult {
  std::vector<std::uint32_t> labels;  ///< kUnlabeled where no vote arrived
  std::vector<float> confidence;      ///< winning mean probability, 0 if uncovered
  std::vector<std::size_t> uncovered;
};

/// Averages per-subcloud class probabilities back onto the parent cloud.
///
/// Votes are kept until reduction and summed per point in ascending center_id
/// order, so the fused output is bit-identical whatever order subclouds were
/// accumulated in. A single buffer is not thread-safe; concurrent producers
/// fill private buffers and merge() them.
class PredictionBuffer {
 public:
  PredictionBuffer(std::size_t points, std::uint32_t classes);

  std::size_t points() const noexcept { return points_; }
  std::uint32_t classes() const noexcept { return classes_; }

  /// Throws ShapeMismatch (row count, center_id, index range, row not summing
  /// to 1 within 1e-6) or ClassCountMismatch.
  void accumulate(const Subcloud& subcloud, const SubcloudPrediction& prediction,
                  FusionWeight weight = FusionWeight::Uniform);

  void merge(PredictionBuffer&& other);

  struct Totals {
    std::vector<double> sums;    ///< points x classes
    std::vector<double> visits;  ///< vote count, or summed weights
  };
  Totals reduce() const;

  /// Fused distribution per point, sums / visits (empty rows where uncovered).
  std::vector<double> mean_distribution() const;

  FusionResult finalize() const;

 private:
  struct Vote {
    std::uint64_t center_id;
    std::vector<std::size_t> indices;
    std::vector<float> probs;
    std::vector<double> weights;  // empty for uniform weighting
  };

  std::size_t points_;
  std::uint32_t classes_;
  std::vector<Vote> votes_;
  std::unordered_set<std::uint64_t> center_ids_;
};

/// argmax with ties to the smallest class id.
std::uint32_t argmax_class(std::span<const double> row);

inline constexpr std::uint16_t kPredictionFormatVersion = 1;

/// Little-endian record:
///   "SPRD" | version u16 | center_id u64 | classes u32 | rows u64 | rows x classes f32
std::string encode_prediction(const SubcloudPrediction& prediction);
SubcloudPrediction decode_prediction(std::string_view bytes);
void write_prediction(const SubcloudPrediction& prediction, const std::filesystem::path& path);
SubcloudPrediction read_prediction(const std::filesystem::path& path);

/// "<center_id>.pred"
std::string prediction_file_name(std::uint64_t center_id);

}  // namespace subcloud

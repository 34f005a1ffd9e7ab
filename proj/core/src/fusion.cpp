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

#include "subcloud/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "subcloud/byte_io.hpp"
#include "subcloud/error.hpp"
#include "subcloud/io.hpp"

namespace subcloud {

PredictionBuffer::PredictionBuffer(std::size_t points, std::uint32_t classes)
    : points_(points), classes_(classes) {
  if (classes == 0) raise(Errc::InvalidArgument, "class count must be positive");
}

void PredictionBuffer::accumulate(const Subcloud& subcloud, const SubcloudPrediction& prediction,
                                  FusionWeight weight) {
  if (prediction.classes != classes_) {
    raise(Errc::ClassCountMismatch, "prediction has " + std::to_string(prediction.classes) +
                                        " classes, buffer has " + std::to_string(classes_));
  }
  if (prediction.center_id != subcloud.center_id) {
    raise(Errc::ShapeMismatch, "prediction center_id " + std::to_string(prediction.center_id) +
                                   " does not match subcloud " +
                                   std::to_string(subcloud.center_id));
  }
  if (prediction.probs.size() != subcloud.size() * classes_) {
    raise(Errc::ShapeMismatch, "prediction rows do not match subcloud cardinality " +
                                   std::to_string(subcloud.size()));
  }
  for (std::size_t i : subcloud.parent_indices) {
    if (i >= points_) raise(Errc::ShapeMismatch, "subcloud index beyond buffer size");
  }
  for (std::size_t j = 0; j < subcloud.size(); ++j) {
    double total = 0.0;
    for (float p : prediction.row(j)) {
      if (!(p >= 0.0f)) raise(Errc::ShapeMismatch, "negative or NaN class probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      raise(Errc::ShapeMismatch, "prediction row " + std::to_string(j) + " sums to " +
                                     std::to_string(total));
    }
  }
  if (center_ids_.contains(subcloud.center_id)) {
    raise(Errc::ShapeMismatch, "center_id " + std::to_string(subcloud.center_id) + " fused twice");
  }

  Vote vote{subcloud.center_id, subcloud.parent_indices, prediction.probs, {}};
  if (weight == FusionWeight::BySelectionProb) {
    vote.weights.assign(subcloud.probs.begin(), subcloud.probs.end());
    if (vote.weights.size() != subcloud.size()) {
      raise(Errc::ShapeMismatch, "subcloud probs missing for weighted fusion");
    }
  }
  center_ids_.insert(vote.center_id);
  votes_.push_back(std::move(vote));
}

void PredictionBuffer::merge(PredictionBuffer&& other) {
  if (other.classes_ != classes_) raise(Errc::ClassCountMismatch, "merging buffers of different C");
  if (other.points_ != points_) raise(Errc::ShapeMismatch, "merging buffers of different size");
  for (const auto& v : other.votes_) {
    if (center_ids_.contains(v.center_id)) {
      raise(Errc::ShapeMismatch, "center_id " + std::to_string(v.center_id) + " fused twice");
    }
  }
  for (auto& v : other.votes_) {
    center_ids_.insert(v.center_id);
    votes_.push_back(std::move(v));
  }
  other.votes_.clear();
  other.center_ids_.clear();
}

PredictionBuffer::Totals PredictionBuffer::reduce() const {
  std::vector<const Vote*> ordered;
  ordered.reserve(votes_.size());
  for (const auto& v : votes_) ordered.push_back(&v);
  std::sort(ordered.begin(), ordered.end(),
            [](const Vote* a, const Vote* b) { return a->center_id < b->center_id; });

  Totals t;
  t.sums.assign(points_ * classes_, 0.0);
  t.visits.assign(points_, 0.0);
  for (const Vote* v : ordered) {
    for (std::size_t j = 0; j < v->indices.size(); ++j) {
      const std::size_t i = v->indices[j];
      const double w = v->weights.empty() ? 1.0 : v->weights[j];
      double* sum = t.sums.data() + i * classes_;
      const float* row = v->probs.data() + j * classes_;
      for (std::uint32_t c = 0; c < classes_; ++c) sum[c] += w * row[c];
      t.visits[i] += w;
    }
  }
  return t;
}

std::vector<double> PredictionBuffer::mean_distribution() const {
  Totals t = reduce();
  for (std::size_t i = 0; i < points_; ++i) {
    if (t.visits[i] <= 0.0) continue;
    for (std::uint32_t c = 0; c < classes_; ++c) t.sums[i * classes_ + c] /= t.visits[i];
  }
  return std::move(t.sums);
}

std::uint32_t argmax_class(std::span<const double> row) {
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

FusionResult PredictionBuffer::finalize() const {
  const Totals t = reduce();
  FusionResult out;
  out.labels.assign(points_, kUnlabeled);
  out.confidence.assign(points_, 0.0f);
  std::vector<double> mean(classes_);
  for (std::size_t i = 0; i < points_; ++i) {
    if (t.visits[i] <= 0.0) {
      out.uncovered.push_back(i);
      continue;
    }
    for (std::uint32_t c = 0; c < classes_; ++c) mean[c] = t.sums[i * classes_ + c] / t.visits[i];
    const std::uint32_t label = argmax_class(mean);
    out.labels[i] = label;
    out.confidence[i] = static_cast<float>(mean[label]);
  }
  return out;
}

std::string encode_prediction(const SubcloudPrediction& p) {
  if (p.classes == 0 || p.probs.size() % p.classes != 0) {
    raise(Errc::ShapeMismatch, "prediction size is not a multiple of the class count");
  }
  std::string out = "SPRD";
  bytes::put(out, kPredictionFormatVersion);
  bytes::put(out, p.center_id);
  bytes::put(out, p.classes);
  bytes::put(out, static_cast<std::uint64_t>(p.rows()));
  for (float v : p.probs) bytes::put(out, v);
  return out;
}

SubcloudPrediction decode_prediction(std::string_view data) {
  bytes::Reader in(data);
  if (in.take(4) != "SPRD") raise(Errc::Format, "missing SPRD magic");
  if (in.get<std::uint16_t>() != kPredictionFormatVersion) {
    raise(Errc::Format, "unsupported prediction version");
  }
  SubcloudPrediction p;
  p.center_id = in.get<std::uint64_t>();
  p.classes = in.get<std::uint32_t>();
  const auto rows = in.get<std::uint64_t>();
  if (p.classes == 0) raise(Errc::Format, "prediction declares zero classes");
  if (rows > in.remaining() / 4 / p.classes) raise(Errc::Format, "prediction rows exceed record");
  p.probs.resize(rows * p.classes);
  for (auto& v : p.probs) v = in.get<float>();
  if (in.remaining() != 0) raise(Errc::Format, "trailing bytes after prediction record");
  return p;
}

void write_prediction(const SubcloudPrediction& prediction, const std::filesystem::path& path) {
  write_file_atomic(path, encode_prediction(prediction));
}

SubcloudPrediction read_prediction(const std::filesystem::path& path) {
  return decode_prediction(read_file(path));
}

std::string prediction_file_name(std::uint64_t center_id) {
  return std::to_string(center_id) + ".pred";
}

}  // namespace subcloud

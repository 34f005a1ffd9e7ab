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

#include "subcloud/metrics.hpp"

#include <algorithm>
#include <charconv>

#include "subcloud/error.hpp"

namespace subcloud {

ConfusionMatrix::ConfusionMatrix(std::uint32_t classes)
    : classes_(classes), counts_(std::size_t{classes} * classes, 0), missed_(classes, 0) {
  if (classes == 0) raise(Errc::InvalidArgument, "class count must be positive");
}

void ConfusionMatrix::add(std::uint32_t gt, std::uint32_t pred) {
  ++evaluated_;
  if (gt == kUnlabeled) {
    ++ignored_;
    return;
  }
  if (gt >= classes_) {
    raise(Errc::ClassOutOfRange, "ground-truth class " + std::to_string(gt) + " >= " +
                                     std::to_string(classes_));
  }
  if (pred == kUnlabeled) {
    ++missed_[gt];
    return;
  }
  if (pred >= classes_) {
    raise(Errc::ClassOutOfRange, "predicted class " + std::to_string(pred) + " >= " +
                                     std::to_string(classes_));
  }
  ++counts_[std::size_t{gt} * classes_ + pred];
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (other.classes_ != classes_) raise(Errc::ClassCountMismatch, "merging matrices of different C");
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  for (std::size_t k = 0; k < missed_.size(); ++k) missed_[k] += other.missed_[k];
  ignored_ += other.ignored_;
  evaluated_ += other.evaluated_;
}

std::uint64_t ConfusionMatrix::true_positives(std::uint32_t c) const { return count(c, c); }

std::uint64_t ConfusionMatrix::false_positives(std::uint32_t c) const {
  std::uint64_t s = 0;
  for (std::uint32_t g = 0; g < classes_; ++g) {
    if (g != c) s += count(g, c);
  }
  return s;
}

std::uint64_t ConfusionMatrix::false_negatives(std::uint32_t c) const {
  std::uint64_t s = missed_[c];
  for (std::uint32_t p = 0; p < classes_; ++p) {
    if (p != c) s += count(c, p);
  }
  return s;
}

ConfusionMatrix confusion(std::span<const std::uint32_t> pred, std::span<const std::uint32_t> gt,
                          std::uint32_t classes) {
  if (pred.size() != gt.size()) {
    raise(Errc::ShapeMismatch, "prediction and ground truth differ in length");
  }
  ConfusionMatrix m(classes);
  for (std::size_t i = 0; i < pred.size(); ++i) m.add(gt[i], pred[i]);
  return m;
}

IouResult iou(const ConfusionMatrix& matrix, UndefinedIou policy) {
  IouResult r;
  r.per_class.resize(matrix.classes());
  double sum = 0.0;
  for (std::uint32_t c = 0; c < matrix.classes(); ++c) {
    const auto tp = matrix.true_positives(c);
    const auto denom = tp + matrix.false_positives(c) + matrix.false_negatives(c);
    if (denom == 0) continue;
    r.per_class[c] = static_cast<double>(tp) / static_cast<double>(denom);
    sum += *r.per_class[c];
    ++r.defined_classes;
  }
  if (r.defined_classes == 0) raise(Errc::NoDefinedClasses, "no class has any TP, FP or FN");
  const double divisor = policy == UndefinedIou::Exclude ? static_cast<double>(r.defined_classes)
                                                         : static_cast<double>(matrix.classes());
  r.miou = sum / divisor;
  return r;
}

ConfusionMatrix subcloud_confusion(std::span<const SubcloudLabels> evaluations,
                                   std::span<const std::uint32_t> gt, std::uint32_t classes) {
  ConfusionMatrix m(classes);
  for (const auto& e : evaluations) {
    if (!e.subcloud || e.predicted.size() != e.subcloud->size()) {
      raise(Errc::ShapeMismatch, "predicted labels not aligned with subcloud");
    }
    for (std::size_t j = 0; j < e.predicted.size(); ++j) {
      const std::size_t i = e.subcloud->parent_indices[j];
      if (i >= gt.size()) raise(Errc::ShapeMismatch, "subcloud index beyond ground truth");
      m.add(gt[i], e.predicted[j]);
    }
  }
  return m;
}

double sensitivity_probability(const CropSpec& spec, double d) {
  if (spec.kind() == CropKind::Spherical) return std::max(0.0, 1.0 - d / spec.parameter());
  return selection_probability(spec, d);
}

std::vector<SensitivityRow> distance_sensitivity(const PointCloud& cloud,
                                                 std::span<const std::uint32_t> gt,
                                                 std::span<const SubcloudLabels> evaluations,
                                                 std::span<const double> thresholds,
                                                 std::uint32_t classes, UndefinedIou policy) {
  if (thresholds.empty()) raise(Errc::EmptyThresholdSet, "no thresholds given");
  if (gt.size() != cloud.size()) raise(Errc::ShapeMismatch, "ground truth does not match cloud");

  std::vector<ConfusionMatrix> matrices(thresholds.size(), ConfusionMatrix(classes));
  std::vector<std::size_t> counts(thresholds.size(), 0);
  for (const auto& e : evaluations) {
    if (!e.subcloud || e.predicted.size() != e.subcloud->size()) {
      raise(Errc::ShapeMismatch, "predicted labels not aligned with subcloud");
    }
    const Subcloud& sub = *e.subcloud;
    for (std::size_t j = 0; j < sub.size(); ++j) {
      const std::size_t i = sub.parent_indices[j];
      if (i >= cloud.size()) raise(Errc::ShapeMismatch, "subcloud index beyond cloud");
      const double p = sensitivity_probability(sub.spec, distance(cloud[i], sub.center));
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        if (p <= thresholds[t]) {
          matrices[t].add(gt[i], e.predicted[j]);
          ++counts[t];
        }
      }
    }
  }

  std::vector<SensitivityRow> rows;
  rows.reserve(thresholds.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    SensitivityRow row{thresholds[t], std::nullopt, counts[t]};
    if (counts[t] > 0) {
      try {
        row.miou = iou(matrices[t], policy).miou;
      } catch (const Error& err) {
        if (err.code() != Errc::NoDefinedClasses) throw;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> default_sensitivity_thresholds() {
  std::vector<double> t;
  for (int n = 2; n <= 9; ++n) t.push_back(n / 10.0);
  return t;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

std::string metrics_to_csv(const ConfusionMatrix& m, const IouResult& r) {
  std::string out = "class_id,tp,fp,fn,iou\n";
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  for (std::uint32_t c = 0; c < m.classes(); ++c) {
    const auto t = m.true_positives(c);
    const auto p = m.false_positives(c);
    const auto n = m.false_negatives(c);
    tp += t;
    fp += p;
    fn += n;
    out += std::to_string(c) + "," + std::to_string(t) + "," + std::to_string(p) + "," +
           std::to_string(n) + ",";
    if (r.per_class[c]) append_double(out, *r.per_class[c]);
    out += '\n';
  }
  out += "miou," + std::to_string(tp) + "," + std::to_string(fp) + "," + std::to_string(fn) + ",";
  append_double(out, r.miou);
  out += '\n';
  return out;
}

std::string sensitivity_to_csv(std::span<const SensitivityRow> rows) {
  std::string out = "tau_p,miou,points\n";
  for (const auto& row : rows) {
    append_double(out, row.tau);
    out += ',';
    if (row.miou) append_double(out, *row.miou);
    out += ',' + std::to_string(row.points) + '\n';
  }
  return out;
}

}  // namespace subcloud

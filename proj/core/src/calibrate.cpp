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

#include "subcloud/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "subcloud/error.hpp"

namespace subcloud {
namespace {

// Cardinality as a function of the crop parameter over fixed distance tables.
class CardinalityCurve {
 public:
  CardinalityCurve(const PointCloud& cloud, std::span<const Vec3> centers, CropKind family,
                   Parallelism par)
      : family_(family), par_(par), tables_(centers.size()) {
    parallel_for(centers.size(), par, [&](std::size_t c) {
      tables_[c] = distances(cloud, centers[c]);
      std::sort(tables_[c].begin(), tables_[c].end());
    });
  }

  double operator()(double parameter) const {
    const CropSpec spec(family_, parameter);
    std::vector<double> sums(tables_.size());
    parallel_for(tables_.size(), par_, [&](std::size_t c) {
      const auto& d = tables_[c];
      if (spec.kind() == CropKind::Spherical) {
        sums[c] = static_cast<double>(std::lower_bound(d.begin(), d.end(), parameter) - d.begin());
        return;
      }
      // Finite support: only distances below d_m contribute.
      const auto end = spec.kind() == CropKind::Linear
                           ? std::lower_bound(d.begin(), d.end(), parameter)
                           : d.end();
      double s = 0.0;
      for (auto it = d.begin(); it != end; ++it) s += selection_probability(spec, *it);
      sums[c] = s;
    });
    double total = 0.0;
    for (double s : sums) total += s;
    return total / static_cast<double>(tables_.size());
  }

  double max_distance() const {
    double m = 0.0;
    for (const auto& d : tables_) m = std::max(m, d.back());
    return m;
  }

 private:
  CropKind family_;
  Parallelism par_;
  std::vector<std::vector<double>> tables_;
};

}  // namespace

double mean_expected_cardinality(const PointCloud& cloud, std::span<const Vec3> centers,
                                 const CropSpec& spec, Parallelism par) {
  if (centers.empty()) raise(Errc::InvalidArgument, "no sample centers");
  std::vector<double> sums(centers.size());
  parallel_for(centers.size(), par,
               [&](std::size_t c) { sums[c] = expected_cardinality(cloud, centers[c], spec); });
  double total = 0.0;
  for (double s : sums) total += s;
  return total / static_cast<double>(centers.size());
}

CropSpec calibrate(const PointCloud& cloud, std::span<const Vec3> sample_centers, CropKind family,
                   double target, const CalibrateOptions& options) {
  if (cloud.empty()) raise(Errc::EmptyCloud, "calibrate on an empty cloud");
  if (sample_centers.empty()) raise(Errc::InvalidArgument, "calibrate needs sample centers");
  if (!(target > 0.0) || !std::isfinite(target)) {
    raise(Errc::InvalidArgument, "calibration target must be positive");
  }
  if (!(options.rel_tol > 0.0)) raise(Errc::InvalidArgument, "rel_tol must be positive");
  const double n = static_cast<double>(cloud.size());
  if (target > n) {
    raise(Errc::Unreachable, "target " + std::to_string(target) + " exceeds the cloud size " +
                                 std::to_string(cloud.size()));
  }

  const CardinalityCurve curve(cloud, sample_centers, family, options.parallelism);
  const double diagonal = bounds(cloud).diagonal();
  const double scale = std::max({diagonal, curve.max_distance(), 1e-6});

  if (family == CropKind::Spherical && target == n) {
    // Every center lies within reach of every point once d_m exceeds both.
    return CropSpec::spherical(scale * (1.0 + 1e-9) + 1e-9);
  }

  // Work on t = parameter for growing families and t = 1/lambda for the
  // exponential one, so that the curve is nondecreasing in t.
  const bool inverted = family == CropKind::Exponential;
  auto param_of = [&](double t) { return inverted ? 1.0 / t : t; };
  auto eval = [&](double t) { return curve(param_of(t)); };

  double lo = scale * 1e-9;
  double f_lo = eval(lo);
  if (f_lo > target * (1.0 + options.rel_tol)) {
    raise(Errc::Unreachable, "target is below the cardinality at the smallest extent");
  }
  double hi = scale;
  double f_hi = eval(hi);
  for (int k = 0; f_hi < target && k < 200; ++k) {
    hi *= 2.0;
    f_hi = eval(hi);
  }
  if (f_hi < target * (1.0 - options.rel_tol)) {
    raise(Errc::Unreachable, "target exceeds the attainable cardinality on this cloud");
  }

  const double tight = options.rel_tol * 1e-3;
  double best_t = std::abs(f_lo - target) < std::abs(f_hi - target) ? lo : hi;
  double best_err = std::min(std::abs(f_lo - target), std::abs(f_hi - target));
  for (int it = 0; it < options.max_iterations && best_err > tight * target; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = eval(mid);
    const double slack = 1e-9 * std::max(1.0, f_hi);
    if (f_mid < f_lo - slack || f_mid > f_hi + slack) {
      raise(Errc::NonMonotoneDetected, "cardinality curve is not monotone near parameter " +
                                           std::to_string(param_of(mid)));
    }
    if (std::abs(f_mid - target) < best_err) {
      best_err = std::abs(f_mid - target);
      best_t = mid;
    }
    if (f_mid < target) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  if (best_err > options.rel_tol * target) {
    raise(Errc::Unreachable, "target falls inside a jump of the cardinality curve (closest " +
                                 std::to_string(target + best_err) + ")");
  }
  return CropSpec(family, param_of(best_t));
}

}  // namespace subcloud

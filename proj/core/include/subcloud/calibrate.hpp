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

#include <span>

#include "subcloud/crop.hpp"
#include "subcloud/parallel.hpp"

namespace subcloud {

struct CalibrateOptions {
  double rel_tol = 1e-3;
  int max_iterations = 200;
  Parallelism parallelism{};
};

/// Mean over `centers` of the expected crop cardinality.
double mean_expected_cardinality(const PointCloud& cloud, std::span<const Vec3> centers,
                                 const CropSpec& spec, Parallelism par = {});

/// Finds the parameter of `family` whose mean expected cardinality over
/// `sample_centers` equals `target` within rel_tol, by bisection on the
/// monotone map parameter -> cardinality (decreasing in lambda, increasing in
/// sigma and d_m).
///
/// target == n is accepted for the spherical family and returns a radius
/// beyond the cloud's bounding-box diagonal. Throws Unreachable when the
/// target is outside the attainable range or falls inside a jump of the
/// (step-shaped) spherical curve.
CropSpec calibrate(const PointCloud& cloud, std::span<const Vec3> sample_centers, CropKind family,
                   double target, const CalibrateOptions& options = {});

}  // namespace subcloud

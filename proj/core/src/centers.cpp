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

#include "subcloud/centers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subcloud/error.hpp"
#include "subcloud/grid.hpp"
#include "subcloud/rng.hpp"
#include "subcloud/spatial_index.hpp"

namespace subcloud {

std::string_view to_string(CenterMethod method) noexcept {
  return method == CenterMethod::Grid ? "grid" : "iterative";
}

CenterSet grid_centers(const PointCloud& cloud, double cell_edge) {
  if (!(cell_edge > 0.0) || !std::isfinite(cell_edge)) {
    raise(Errc::InvalidArgument, "cell edge must be positive");
  }
  if (cloud.empty()) raise(Errc::EmptyCloud, "grid_centers on an empty cloud");
  const Aabb box = bounds(cloud);
  const GridKeyer keyer(box.min, cell_edge, box);

  std::vector<std::uint64_t> keys;
  keys.reserve(cloud.size());
  for (const Vec3& p : cloud.coords()) keys.push_back(keyer.key(p));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  CenterSet set;
  set.method = CenterMethod::Grid;
  set.method_param = cell_edge;
  set.centers.reserve(keys.size());
  for (std::uint64_t k : keys) set.centers.push_back(keyer.cell_center(GridKeyer::unpack(k)));
  return set;
}

double default_cell_edge(const CropSpec& spec, double overlap) {
  if (!(overlap > 0.0) || !std::isfinite(overlap)) {
    raise(Errc::InvalidArgument, "overlap factor must be positive");
  }
  return effective_radius(spec, std::exp(-1.0)) / overlap;
}

CenterSet iterative_random_centers(const PointCloud& cloud, const CropSpec& spec, double tau,
                                   std::uint64_t seed, const IterativeOptions& options) {
  if (cloud.empty()) raise(Errc::EmptyCloud, "iterative_random_centers on an empty cloud");
  if (!(tau > 0.0)) raise(Errc::InvalidArgument, "threshold must be positive");
  if (tau > 1.0) raise(Errc::Unsatisfiable, "threshold exceeds the maximum probability 1");

  const std::size_t n = cloud.size();
  const std::size_t cap = options.iteration_cap ? options.iteration_cap : 10 * n + 10;
  const auto coords = cloud.coords();
  std::vector<double> best(n, 0.0);
  std::vector<std::size_t> below(n);
  for (std::size_t i = 0; i < n; ++i) below[i] = i;

  std::optional<SpatialIndex> index;
  if (spec.has_finite_support()) index.emplace(cloud, spec.parameter());

  RngCursor rng(seed, streams::kCenterSelection);
  CenterSet set;
  set.method = CenterMethod::IterativeRandom;
  set.method_param = tau;
  set.seed = seed;
  set.spec = spec;

  while (!below.empty()) {
    if (set.centers.size() >= cap) {
      raise(Errc::IterationCap, "iterative center selection exceeded " + std::to_string(cap) +
                                    " centers");
    }
    const Vec3 center = coords[below[rng.below(below.size())]];
    set.centers.push_back(center);
    auto lift = [&](std::size_t i, const Vec3& p) {
      best[i] = std::max(best[i], selection_probability(spec, distance(p, center)));
    };
    if (index) {
      index->for_each_candidate(center, spec.parameter(), lift);
    } else {
      for (std::size_t i : below) lift(i, coords[i]);
    }
    std::erase_if(below, [&](std::size_t i) { return best[i] >= tau; });
  }
  return set;
}

double CoverageReport::mean_visits() const {
  if (visits.empty()) return 0.0;
  double sum = 0.0;
  for (auto v : visits) sum += v;
  return sum / static_cast<double>(visits.size());
}

CoverageReport coverage_report(const PointCloud& cloud, std::span<const Vec3> centers,
                               const CropSpec& spec, Parallelism par) {
  const std::size_t n = cloud.size();
  CoverageReport report;
  report.max_prob.assign(n, 0.0);
  report.visits.assign(n, 0);
  const auto coords = cloud.coords();

  if (spec.has_finite_support() && n > 0) {
    const SpatialIndex index(cloud, spec.parameter());
    for (const Vec3& c : centers) {
      index.for_each_candidate(c, spec.parameter(), [&](std::size_t i, const Vec3& p) {
        const double q = selection_probability(spec, distance(p, c));
        if (q > 0.0) {
          ++report.visits[i];
          report.max_prob[i] = std::max(report.max_prob[i], q);
        }
      });
    }
  } else {
    constexpr std::size_t kChunk = 4096;
    parallel_for((n + kChunk - 1) / kChunk, par, [&](std::size_t chunk) {
      const std::size_t end = std::min(n, (chunk + 1) * kChunk);
      for (std::size_t i = chunk * kChunk; i < end; ++i) {
        for (const Vec3& c : centers) {
          const double q = selection_probability(spec, distance(coords[i], c));
          if (q > 0.0) {
            ++report.visits[i];
            report.max_prob[i] = std::max(report.max_prob[i], q);
          }
        }
      }
    });
  }

  report.min_max_prob = n ? *std::min_element(report.max_prob.begin(), report.max_prob.end()) : 0.0;
  report.uncovered_count =
      static_cast<std::size_t>(std::count(report.visits.begin(), report.visits.end(), 0u));
  return report;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    raise(Errc::Format, "bad number '" + std::string(s) + "' in centers CSV");
  }
  return v;
}

}  // namespace

std::string centers_to_csv(const CenterSet& set) {
  std::string out = "center_id,x,y,z,method,param\n";
  for (std::size_t k = 0; k < set.centers.size(); ++k) {
    out += std::to_string(k);
    for (int a = 0; a < 3; ++a) {
      out += ',';
      append_double(out, set.centers[k][a]);
    }
    out += ',';
    out += to_string(set.method);
    out += ',';
    append_double(out, set.method_param);
    out += '\n';
  }
  return out;
}

CenterSet centers_from_csv(std::string_view text) {
  CenterSet set;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no++ == 0) {
      if (line != "center_id,x,y,z,method,param") raise(Errc::Format, "unexpected centers header");
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t f = 0;
    while (true) {
      const std::size_t comma = line.find(',', f);
      fields.push_back(line.substr(f, comma == std::string_view::npos ? line.npos : comma - f));
      if (comma == std::string_view::npos) break;
      f = comma + 1;
    }
    if (fields.size() != 6) raise(Errc::Format, "centers row needs 6 fields");
    if (parse_double(fields[0]) != static_cast<double>(set.centers.size())) {
      raise(Errc::Format, "center ids must be 0..M-1 in order");
    }
    set.centers.push_back({parse_double(fields[1]), parse_double(fields[2]),
                           parse_double(fields[3])});
    if (fields[4] == "grid") {
      set.method = CenterMethod::Grid;
    } else if (fields[4] == "iterative") {
      set.method = CenterMethod::IterativeRandom;
    } else {
      raise(Errc::Format, "unknown center method '" + std::string(fields[4]) + "'");
    }
    set.method_param = parse_double(fields[5]);
  }
  return set;
}

}  // namespace subcloud

// Copyright 2026 The Firesite Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "firesite/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <unordered_set>

#include "firesite/error.h"
#include "firesite/road_network.h"

namespace firesite {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double NetworkDistance(const RoadNetwork& net, const RoadNetwork::Snap& a,
                       const RoadNetwork::Snap& b,
                       const std::vector<double>& from_a_start,
                       const std::vector<double>& from_a_end) {
  const double len_a = net.edges()[a.edge].length;
  const double len_b = net.edges()[b.edge].length;
  double best = kInfinity;
  if (a.edge == b.edge) {
    best = a.access + std::abs(a.offset - b.offset) + b.access;
  }
  const std::size_t b_start = net.EdgeFrom(b.edge);
  const std::size_t b_end = net.EdgeTo(b.edge);
  const double legs_a[2] = {a.offset, len_a - a.offset};
  const std::vector<double>* paths[2] = {&from_a_start, &from_a_end};
  for (int ea = 0; ea < 2; ++ea) {
    const std::vector<double>& dist = *paths[ea];
    const double via_start = legs_a[ea] + dist[b_start] + b.offset;
    const double via_end = legs_a[ea] + dist[b_end] + (len_b - b.offset);
    best = std::min({best, a.access + via_start + b.access,
                     a.access + via_end + b.access});
  }
  return best;
}

}  // namespace

void ValidatePointSet(const PointSet& points, std::string_view what) {
  std::unordered_set<std::string> seen;
  for (const Point& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError(std::string(what) + ": non-finite coordinate at '" +
                            p.id + "'");
    }
    if (!seen.insert(p.id).second) {
      throw ValidationError(std::string(what) + ": duplicate id '" + p.id +
                            "'");
    }
  }
}

double EuclideanDistance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view MetricName(Metric metric) {
  return metric == Metric::kNetwork ? "network" : "euclidean";
}

Metric ParseMetric(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "network") return Metric::kNetwork;
  throw ConfigError("unknown distance metric '" + std::string(name) + "'");
}

DistanceIndex::DistanceIndex(std::vector<std::string> row_ids,
                             std::vector<std::string> col_ids,
                             std::vector<double> values, Metric metric)
    : row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)),
      values_(std::move(values)),
      metric_(metric) {
  if (values_.size() != row_ids_.size() * col_ids_.size()) {
    throw ValidationError("distance index: value count does not match shape");
  }
  has_unreachable_ = std::any_of(values_.begin(), values_.end(),
                                 [](double v) { return std::isinf(v); });
}

DistanceIndex ComputeDistanceIndex(const PointSet& a, const PointSet& b,
                                   Metric metric, const RoadNetwork* network) {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  row_ids.reserve(a.size());
  col_ids.reserve(b.size());
  for (const Point& p : a) row_ids.push_back(p.id);
  for (const Point& p : b) col_ids.push_back(p.id);
  std::vector<double> values(a.size() * b.size());

  if (metric == Metric::kEuclidean) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        values[i * b.size() + j] = EuclideanDistance(a[i], b[j]);
      }
    }
    return DistanceIndex(std::move(row_ids), std::move(col_ids),
                         std::move(values), metric);
  }

  if (network == nullptr || network->edges().empty()) {
    throw ConfigError("network metric requested without a road network");
  }
  std::vector<RoadNetwork::Snap> snaps_a;
  std::vector<RoadNetwork::Snap> snaps_b;
  for (const Point& p : a) snaps_a.push_back(network->SnapPoint(p.x, p.y));
  for (const Point& p : b) snaps_b.push_back(network->SnapPoint(p.x, p.y));

  std::map<std::size_t, std::vector<double>> paths;
  auto paths_from = [&](std::size_t node) -> const std::vector<double>& {
    auto it = paths.find(node);
    if (it == paths.end()) {
      it = paths.emplace(node, network->ShortestPathsFrom(node)).first;
    }
    return it->second;
  };

  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& start = paths_from(network->EdgeFrom(snaps_a[i].edge));
    const auto& end = paths_from(network->EdgeTo(snaps_a[i].edge));
    for (std::size_t j = 0; j < b.size(); ++j) {
      const bool same_spot = a[i].x == b[j].x && a[i].y == b[j].y;
      values[i * b.size() + j] =
          same_spot ? 0.0
                    : NetworkDistance(*network, snaps_a[i], snaps_b[j], start,
                                      end);
    }
  }
  DistanceIndex index(std::move(row_ids), std::move(col_ids),
                      std::move(values), metric);
  if (index.has_unreachable()) {
    LogWarning("network distance index contains disconnected points");
  }
  return index;
}

CoverageSets ComputeCoverageSets(const DistanceIndex& distances,
                                 double radius) {
  if (!(radius > 0.0)) throw DomainError("coverage radius must be positive");
  CoverageSets sets;
  sets.sites_of_demand.resize(distances.rows());
  sets.demands_of_site.resize(distances.cols());
  for (std::size_t i = 0; i < distances.rows(); ++i) {
    for (std::size_t j = 0; j < distances.cols(); ++j) {
      if (distances(i, j) <= radius) {
        sets.sites_of_demand[i].push_back(j);
        sets.demands_of_site[j].push_back(i);
      }
    }
  }
  return sets;
}

Neighbor NearestStation(std::size_t site, std::span<const std::size_t> sited,
                        const DistanceIndex& distances) {
  bool found = false;
  Neighbor best;
  for (std::size_t other : sited) {
    if (other == site) continue;
    const double d = distances(site, other);
    if (!found || d < best.distance ||
        (d == best.distance &&
         distances.col_id(other) < distances.col_id(best.site))) {
      best = {other, d};
      found = true;
    }
  }
  if (!found) {
    throw NoNeighborError("no other sited station adjacent to '" +
                          distances.row_id(site) + "'");
  }
  return best;
}

double LensArea(double separation, double radius) {
  if (separation >= 2.0 * radius) return 0.0;
  if (separation <= 0.0) return std::numbers::pi * radius * radius;
  const double half = separation / 2.0;
  return 2.0 * radius * radius * std::acos(half / radius) -
         half * std::sqrt(4.0 * radius * radius - separation * separation);
}

double MinSeparationForOverlap(double radius, double max_overlap_fraction) {
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  if (!(max_overlap_fraction >= 0.0 && max_overlap_fraction <= 1.0)) {
    throw DomainError("overlap fraction must lie in [0, 1]");
  }
  if (max_overlap_fraction == 1.0) return 0.0;
  if (max_overlap_fraction == 0.0) return 2.0 * radius;
  const double target = max_overlap_fraction * std::numbers::pi * radius * radius;
  // Lens area decreases strictly on [0, 2R]; keep `hi` on the admissible side.
  double lo = 0.0;
  double hi = 2.0 * radius;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (LensArea(mid, radius) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace firesite

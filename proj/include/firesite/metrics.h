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

#ifndef FIRESITE_METRICS_H_
#define FIRESITE_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "firesite/evolutionary.h"
#include "firesite/geometry.h"

namespace firesite {

using Front = std::vector<std::vector<double>>;

Front ObjectivesOf(const ParetoArchive& archive);

// Component-wise maximum plus `offset` on every component.
std::vector<double> NadirPoint(std::span<const std::vector<double>> front,
                               double offset = 1e-9);

// Exact Lebesgue measure of the region dominated by `front` and bounded by
// `reference` (minimization). Points not strictly better than the reference
// in every component contribute nothing. Dimension sweep with a 2-D base case.
double Hypervolume(std::span<const std::vector<double>> front,
                   std::span<const double> reference);

// Schott's spacing with Euclidean nearest-neighbor distances; absent for
// fronts with fewer than two points.
std::optional<double> Spacing(std::span<const std::vector<double>> front);

// Per-objective bounds used for min-max normalization.
struct ObjectiveBounds {
  std::vector<double> lower;
  std::vector<double> upper;
};
ObjectiveBounds BoundsOf(std::span<const Front> fronts);
// Zero-range objectives map to 0.
Front Normalize(std::span<const std::vector<double>> front,
                const ObjectiveBounds& bounds);

struct IndicatorRow {
  std::size_t generation = 0;
  std::size_t size = 0;
  double hv_nadir = 0.0;  // reference = that generation's nadir point
  double hv_fixed = 0.0;  // reference = nadir over all generations
  std::optional<double> spacing;
};

// HV (both reference modes) and spacing for each generation's front. With
// `normalize`, every front is min-max scaled by bounds taken over all
// generations before measuring.
std::vector<IndicatorRow> IndicatorTrace(std::span<const Front> history,
                                         std::span<const std::size_t> generations,
                                         bool normalize);

struct Station {
  Point location;
  double radius = 0.0;
};

struct CoverageReport {
  std::optional<double> high_risk_rate;   // absent with no high-risk demand
  double demand_rate = 0.0;               // covered share of total demand
  std::optional<double> incident_rate;    // absent without incidents
  std::size_t high_risk_total = 0;
  std::size_t high_risk_covered = 0;
  std::size_t incidents_total = 0;
  std::size_t incidents_covered = 0;
  // Total demand within each station's radius, in station order.
  std::vector<double> workloads;
};

// Coverage statistics of a combined station layout (Euclidean, inclusive).
CoverageReport ComputeCoverageReport(std::span<const Station> stations,
                                     const PointSet& demand_points,
                                     std::span<const double> demand,
                                     const PointSet* incidents,
                                     double high_risk_threshold);

}  // namespace firesite

#endif  // FIRESITE_METRICS_H_

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

#ifndef FIRESITE_GEOMETRY_H_
#define FIRESITE_GEOMETRY_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace firesite {

class RoadNetwork;

// A labelled location in planar kilometers.
struct Point {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

using PointSet = std::vector<Point>;

// Throws ValidationError on duplicate ids or non-finite coordinates.
void ValidatePointSet(const PointSet& points, std::string_view what);

double EuclideanDistance(const Point& a, const Point& b);

enum class Metric { kEuclidean, kNetwork };

std::string_view MetricName(Metric metric);
Metric ParseMetric(std::string_view name);

// Dense row-major distance matrix between two point sets. Rows index the
// first set, columns the second. Unreachable pairs (network metric only) hold
// +infinity and set has_unreachable().
class DistanceIndex {
 public:
  DistanceIndex() = default;
  DistanceIndex(std::vector<std::string> row_ids,
                std::vector<std::string> col_ids, std::vector<double> values,
                Metric metric);

  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return col_ids_.size(); }
  double operator()(std::size_t row, std::size_t col) const {
    return values_[row * col_ids_.size() + col];
  }
  const std::string& row_id(std::size_t row) const { return row_ids_[row]; }
  const std::string& col_id(std::size_t col) const { return col_ids_[col]; }
  Metric metric() const { return metric_; }
  bool has_unreachable() const { return has_unreachable_; }

 private:
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_ids_;
  std::vector<double> values_;
  Metric metric_ = Metric::kEuclidean;
  bool has_unreachable_ = false;
};

// `network` is required for Metric::kNetwork and ignored otherwise.
DistanceIndex ComputeDistanceIndex(const PointSet& a, const PointSet& b,
                                   Metric metric = Metric::kEuclidean,
                                   const RoadNetwork* network = nullptr);

// Coverage relation at a service radius (inclusive). Rows of the distance
// index are demand points, columns are candidate sites.
struct CoverageSets {
  // For each demand point, the sites within the radius (ascending).
  std::vector<std::vector<std::size_t>> sites_of_demand;
  // For each site, the demand points within the radius (ascending).
  std::vector<std::vector<std::size_t>> demands_of_site;
};

CoverageSets ComputeCoverageSets(const DistanceIndex& distances, double radius);

struct Neighbor {
  std::size_t site = 0;
  double distance = 0.0;
};

// The station adjacent to `site`: the nearest member of `sited` other than
// `site` itself. `distances` is a square index over one site list; ties go to
// the lexicographically smaller column id. Throws NoNeighborError when
// `sited` holds nothing but `site`.
Neighbor NearestStation(std::size_t site, std::span<const std::size_t> sited,
                        const DistanceIndex& distances);

// Area of the intersection of two circles of equal radius whose centers are
// `separation` apart.
double LensArea(double separation, double radius);

// Smallest center separation at which two radius-R service disks overlap by
// no more than `max_overlap_fraction` of one disk's area, found by bisection
// (well inside the 1e-6 km tolerance).
double MinSeparationForOverlap(double radius, double max_overlap_fraction);

}  // namespace firesite

#endif  // FIRESITE_GEOMETRY_H_

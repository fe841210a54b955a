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

#include "firesite/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "firesite/error.h"

namespace firesite {
namespace {

// Area dominated by 2-D points (already filtered to beat the reference).
double Hypervolume2D(std::vector<std::array<double, 2>> pts,
                     const double ref[2]) {
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double best_y = ref[1];
  for (const auto& p : pts) {
    if (p[1] < best_y) {
      area += (ref[0] - p[0]) * (best_y - p[1]);
      best_y = p[1];
    }
  }
  return area;
}

double HypervolumeRecursive(std::vector<std::vector<double>> pts,
                            std::span<const double> ref) {
  const std::size_t d = ref.size();
  if (pts.empty()) return 0.0;
  if (d == 1) {
    double best = ref[0];
    for (const auto& p : pts) best = std::min(best, p[0]);
    return ref[0] - best;
  }
  if (d == 2) {
    std::vector<std::array<double, 2>> flat;
    flat.reserve(pts.size());
    for (const auto& p : pts) flat.push_back({p[0], p[1]});
    const double r[2] = {ref[0], ref[1]};
    return Hypervolume2D(std::move(flat), r);
  }
  // Sweep along the last objective: between consecutive levels the slice is
  // the (d-1)-volume of every point at or below the lower level.
  std::sort(pts.begin(), pts.end(),
            [d](const auto& a, const auto& b) { return a[d - 1] < b[d - 1]; });
  double volume = 0.0;
  std::vector<std::vector<double>> active;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    active.emplace_back(pts[k].begin(), pts[k].end() - 1);
    const double upper = k + 1 < pts.size() ? pts[k + 1][d - 1] : ref[d - 1];
    const double height = upper - pts[k][d - 1];
    if (height > 0.0) {
      volume += height * HypervolumeRecursive(active, ref.first(d - 1));
    }
  }
  return volume;
}

}  // namespace

Front ObjectivesOf(const ParetoArchive& archive) {
  Front out;
  out.reserve(archive.members.size());
  for (const auto& m : archive.members) out.push_back(m.objectives);
  return out;
}

std::vector<double> NadirPoint(std::span<const std::vector<double>> front,
                               double offset) {
  if (front.empty()) throw DomainError("nadir point of an empty front");
  std::vector<double> nadir = front.front();
  for (const auto& p : front) {
    for (std::size_t k = 0; k < nadir.size(); ++k) {
      nadir[k] = std::max(nadir[k], p[k]);
    }
  }
  for (double& v : nadir) v += offset;
  return nadir;
}

double Hypervolume(std::span<const std::vector<double>> front,
                   std::span<const double> reference) {
  std::vector<std::vector<double>> inside;
  for (const auto& p : front) {
    if (p.size() != reference.size()) {
      throw DomainError("hypervolume: dimension mismatch");
    }
    bool beats = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!(p[k] < reference[k])) beats = false;
    }
    if (beats) inside.push_back(p);
  }
  return HypervolumeRecursive(std::move(inside), reference);
}

std::optional<double> Spacing(std::span<const std::vector<double>> front) {
  const std::size_t n = front.size();
  if (n < 2) return std::nullopt;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double sq = 0.0;
      for (std::size_t k = 0; k < front[i].size(); ++k) {
        const double diff = front[i][k] - front[j][k];
        sq += diff * diff;
      }
      nearest[i] = std::min(nearest[i], std::sqrt(sq));
    }
  }
  const double mean =
      std::accumulate(nearest.begin(), nearest.end(), 0.0) / static_cast<double>(n);
  double sum = 0.0;
  for (double d : nearest) sum += (mean - d) * (mean - d);
  return std::sqrt(sum / static_cast<double>(n - 1));
}

ObjectiveBounds BoundsOf(std::span<const Front> fronts) {
  ObjectiveBounds bounds;
  for (const Front& f : fronts) {
    for (const auto& p : f) {
      if (bounds.lower.empty()) {
        bounds.lower = p;
        bounds.upper = p;
        continue;
      }
      for (std::size_t k = 0; k < p.size(); ++k) {
        bounds.lower[k] = std::min(bounds.lower[k], p[k]);
        bounds.upper[k] = std::max(bounds.upper[k], p[k]);
      }
    }
  }
  return bounds;
}

Front Normalize(std::span<const std::vector<double>> front,
                const ObjectiveBounds& bounds) {
  Front out;
  out.reserve(front.size());
  for (const auto& p : front) {
    std::vector<double> q(p.size(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double range = bounds.upper[k] - bounds.lower[k];
      q[k] = range > 0.0 ? (p[k] - bounds.lower[k]) / range : 0.0;
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<IndicatorRow> IndicatorTrace(std::span<const Front> history,
                                         std::span<const std::size_t> generations,
                                         bool normalize) {
  if (generations.size() != history.size()) {
    throw DomainError("indicator trace: generation labels do not match history");
  }
  const ObjectiveBounds bounds = BoundsOf(history);
  std::vector<Front> fronts;
  fronts.reserve(history.size());
  for (const Front& f : history) {
    fronts.push_back(normalize ? Normalize(f, bounds) : f);
  }
  Front all;
  for (const Front& f : fronts) all.insert(all.end(), f.begin(), f.end());

  std::vector<IndicatorRow> rows;
  rows.reserve(fronts.size());
  const std::vector<double> fixed =
      all.empty() ? std::vector<double>{} : NadirPoint(all);
  for (std::size_t g = 0; g < fronts.size(); ++g) {
    IndicatorRow row;
    row.generation = generations[g];
    row.size = fronts[g].size();
    if (!fronts[g].empty()) {
      row.hv_nadir = Hypervolume(fronts[g], NadirPoint(fronts[g]));
      row.hv_fixed = Hypervolume(fronts[g], fixed);
      row.spacing = Spacing(fronts[g]);
    }
    rows.push_back(row);
  }
  return rows;
}

CoverageReport ComputeCoverageReport(std::span<const Station> stations,
                                     const PointSet& demand_points,
                                     std::span<const double> demand,
                                     const PointSet* incidents,
                                     double high_risk_threshold) {
  if (high_risk_threshold < 0.0) {
    throw DomainError("high-risk threshold must be non-negative");
  }
  if (demand.size() != demand_points.size()) {
    throw DomainError("coverage report: demand values do not match points");
  }
  auto covered = [&](const Point& p) {
    return std::any_of(stations.begin(), stations.end(), [&](const Station& s) {
      return EuclideanDistance(p, s.location) <= s.radius;
    });
  };

  CoverageReport report;
  double total = 0.0;
  double covered_total = 0.0;
  for (std::size_t i = 0; i < demand_points.size(); ++i) {
    const bool hit = covered(demand_points[i]);
    total += demand[i];
    if (hit) covered_total += demand[i];
    if (demand[i] >= high_risk_threshold) {
      ++report.high_risk_total;
      if (hit) ++report.high_risk_covered;
    }
  }
  report.demand_rate = total > 0.0 ? covered_total / total : 0.0;
  if (report.high_risk_total > 0) {
    report.high_risk_rate = static_cast<double>(report.high_risk_covered) /
                            static_cast<double>(report.high_risk_total);
  }
  if (incidents != nullptr && !incidents->empty()) {
    report.incidents_total = incidents->size();
    for (const Point& p : *incidents) {
      if (covered(p)) ++report.incidents_covered;
    }
    report.incident_rate = static_cast<double>(report.incidents_covered) /
                           static_cast<double>(report.incidents_total);
  }
  for (const Station& s : stations) {
    double load = 0.0;
    for (std::size_t i = 0; i < demand_points.size(); ++i) {
      if (EuclideanDistance(demand_points[i], s.location) <= s.radius) {
        load += demand[i];
      }
    }
    report.workloads.push_back(load);
  }
  return report;
}

}  // namespace firesite

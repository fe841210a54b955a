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

#include "firesite/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "firesite/error.h"
#include "firesite/random.h"
#include "firesite/road_network.h"
#include "firesite/sizing.h"

namespace firesite {
namespace {

// Kept a little inside the default micro radius of 1 km.
constexpr double kMicroReach = 0.9;

double UniformIn(Random& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.Uniform01();
}

double Gaussian(Random& rng) {
  // Box-Muller; 1 - U keeps the log argument away from zero.
  const double u = 1.0 - rng.Uniform01();
  const double v = rng.Uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

long Poisson(Random& rng, double mean) {
  const double limit = std::exp(-mean);
  long k = 0;
  double p = rng.Uniform01();
  while (p > limit) {
    ++k;
    p *= rng.Uniform01();
  }
  return k;
}

// `count` distinct indices of [0, n) in ascending order.
std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t count,
                                       Random& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(all[i], all[i + rng.Below(n - i)]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

RoadNetwork GridNetwork(const SynthParams& p, Random& rng) {
  const auto cols = static_cast<std::size_t>(std::floor(p.width / p.grid_spacing)) + 1;
  const auto rows = static_cast<std::size_t>(std::floor(p.height / p.grid_spacing)) + 1;
  const double jitter = 0.2 * p.grid_spacing;
  auto node_id = [](std::size_t r, std::size_t c) {
    return "n" + std::to_string(r) + "_" + std::to_string(c);
  };

  std::vector<RoadNode> nodes;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = std::clamp(c * p.grid_spacing + UniformIn(rng, -jitter, jitter),
                                  0.0, p.width);
      const double y = std::clamp(r * p.grid_spacing + UniformIn(rng, -jitter, jitter),
                                  0.0, p.height);
      nodes.push_back({node_id(r, c), x, y, false});
    }
  }

  std::vector<RoadEdge> edges;
  auto add_edge = [&](std::size_t a, std::size_t b) {
    const RoadNode& u = nodes[a];
    const RoadNode& v = nodes[b];
    // One bend near the middle, offset perpendicular to the chord.
    const double dx = v.x - u.x;
    const double dy = v.y - u.y;
    const double len = std::hypot(dx, dy);
    const double bend = UniformIn(rng, -0.1, 0.1) * p.grid_spacing;
    const double mx = 0.5 * (u.x + v.x) - dy / len * bend;
    const double my = 0.5 * (u.y + v.y) + dx / len * bend;
    RoadEdge edge;
    edge.id = "e" + std::to_string(edges.size());
    edge.from = u.id;
    edge.to = v.id;
    edge.polyline = {{u.x, u.y}, {mx, my}, {v.x, v.y}};
    edges.push_back(std::move(edge));
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t here = r * cols + c;
      if (c + 1 < cols) add_edge(here, here + 1);
      if (r + 1 < rows) add_edge(here, here + cols);
    }
  }
  return RoadNetwork(std::move(nodes), std::move(edges));
}

// Overwrites the smallest values until at least `want` distinct values exist,
// so natural breaks with `want` classes is always defined.
template <typename T>
void EnsureDistinct(std::vector<T>& values, std::size_t want, T step) {
  if (values.size() < want) return;
  std::set<T> seen(values.begin(), values.end());
  std::size_t k = 0;
  while (seen.size() < want) {
    const T bumped = *seen.rbegin() + step;
    values[k++] = bumped;
    seen = std::set<T>(values.begin(), values.end());
  }
}

}  // namespace

SynthParams SynthParams::Tiny(std::uint64_t seed) {
  SynthParams p;
  p.communities = 10;
  p.existing_stations = 1;
  p.width = 4.5;
  p.height = 4.5;
  p.grid_spacing = 1.0;
  p.hotspots = 2;
  p.hotspot_sigma = 0.8;
  p.incidents = 40;
  p.macro_candidates = 15;
  p.micro_candidates = 12;
  p.seed = seed;
  return p;
}

InstanceFile GenerateSynthetic(const SynthParams& p) {
  if (p.communities == 0) throw ValidationError("synthetic instance needs communities");
  if (!(p.width > 0.0) || !(p.height > 0.0) || !(p.grid_spacing > 0.0)) {
    throw ValidationError("synthetic region and grid spacing must be positive");
  }
  Random rng(p.seed);
  InstanceFile instance;

  std::vector<std::array<double, 2>> hotspots;
  for (std::size_t h = 0; h < std::max<std::size_t>(p.hotspots, 1); ++h) {
    hotspots.push_back({UniformIn(rng, 0.15, 0.85) * p.width,
                        UniformIn(rng, 0.15, 0.85) * p.height});
  }
  auto intensity = [&](double x, double y) {
    double sum = 0.0;
    for (const auto& h : hotspots) {
      const double d2 = (x - h[0]) * (x - h[0]) + (y - h[1]) * (y - h[1]);
      sum += std::exp(-d2 / (2.0 * p.hotspot_sigma * p.hotspot_sigma));
    }
    return sum;
  };

  std::vector<long> accidents;
  std::vector<double> density;
  // Stratified placement: one community per cell of a grid with at least
  // as many cells as communities, cells drawn without replacement.
  const auto cols = static_cast<std::size_t>(std::ceil(
      std::sqrt(static_cast<double>(p.communities) * p.width / p.height)));
  const std::size_t rows = (p.communities + cols - 1) / cols;
  const double cell_w = p.width / static_cast<double>(cols);
  const double cell_h = p.height / static_cast<double>(rows);
  const std::vector<std::size_t> cells = SampleIndices(rows * cols, p.communities, rng);
  for (std::size_t i = 0; i < p.communities; ++i) {
    DemandRecord r;
    r.id = "c" + std::to_string(i + 1);
    r.x = (static_cast<double>(cells[i] % cols) + rng.Uniform01()) * cell_w;
    r.y = (static_cast<double>(cells[i] / cols) + rng.Uniform01()) * cell_h;
    const double w = p.risk_clustering * intensity(r.x, r.y) +
                     (1.0 - p.risk_clustering) * rng.Uniform01();
    accidents.push_back(Poisson(rng, 3.0 + 40.0 * w));
    density.push_back(std::round(10.0 * (4.0 + 30.0 * w + 3.0 * rng.Uniform01())) / 10.0);
    instance.demand_points.push_back(std::move(r));
  }
  EnsureDistinct(accidents, 4, 1L);
  EnsureDistinct(density, 4, 0.1);
  for (std::size_t i = 0; i < p.communities; ++i) {
    instance.demand_points[i].accidents = accidents[i];
    instance.demand_points[i].density = density[i];
  }

  for (std::size_t s = 0; s < p.existing_stations; ++s) {
    const double fx = (s + 0.5) / static_cast<double>(p.existing_stations);
    instance.existing_stations.push_back(
        {"f" + std::to_string(s + 1),
         std::clamp(fx * p.width + UniformIn(rng, -0.3, 0.3), 0.0, p.width),
         std::clamp(0.5 * p.height + UniformIn(rng, -0.3, 0.3), 0.0, p.height)});
  }

  const RoadNetwork network = GridNetwork(p, rng);
  const PointSet pool =
      GenerateCandidates(network, p.candidate_spacing_m, p.candidate_clearance_m);

  if (!instance.existing_stations.empty()) {
    const SizingConfig defaults;
    const MacroBounds bounds = ComputeMacroBounds(
        MacroRadius(defaults.first_class_area, defaults.second_class_area,
                    defaults.area_weight),
        defaults.tolerance, defaults.max_overlap);
    const PointSet ring = AnnulusFilter(pool, instance.existing_stations,
                                        bounds.min_separation, bounds.max_separation);
    PointSet macro;
    for (std::size_t j : SampleIndices(ring.size(), p.macro_candidates, rng)) {
      macro.push_back(ring[j]);
    }
    instance.macro_candidates = std::move(macro);
  }

  // Micro stations sit on junctions only.
  const PointSet junctions = GenerateCandidates(network, p.candidate_spacing_m,
                                                p.candidate_clearance_m, false);
  // Each community contributes the reachable junction serving the fewest
  // communities, plus the reachable junction farthest from it, so a light
  // covering option survives both the workload cap and the anchor ring.
  std::set<std::size_t> micro_idx;
  const DistanceIndex to_pool = ComputeDistanceIndex(instance.DemandPointSet(), junctions);
  std::vector<std::size_t> served(junctions.size(), 0);
  for (std::size_t i = 0; i < to_pool.rows(); ++i) {
    for (std::size_t j = 0; j < to_pool.cols(); ++j) {
      if (to_pool(i, j) <= kMicroReach) ++served[j];
    }
  }
  std::vector<std::size_t> firsts;
  std::vector<std::size_t> seconds;
  for (std::size_t i = 0; i < to_pool.rows(); ++i) {
    std::vector<std::size_t> near;
    std::size_t closest = 0;
    for (std::size_t j = 0; j < to_pool.cols(); ++j) {
      if (to_pool(i, j) <= kMicroReach) near.push_back(j);
      if (to_pool(i, j) < to_pool(i, closest)) closest = j;
    }
    if (near.empty()) near.push_back(closest);
    std::size_t first = near.front();
    for (std::size_t j : near) {
      if (served[j] < served[first]) first = j;
    }
    std::size_t second = first;
    for (std::size_t j : near) {
      if (EuclideanDistance(junctions[j], junctions[first]) >
          EuclideanDistance(junctions[second], junctions[first])) {
        second = j;
      }
    }
    firsts.push_back(first);
    seconds.push_back(second);
  }
  // Every community's primary junction before any spare.
  for (const auto* picks : {&firsts, &seconds}) {
    for (std::size_t j : *picks) {
      if (micro_idx.size() < p.micro_candidates) micro_idx.insert(j);
    }
  }
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < junctions.size(); ++j) {
    if (!micro_idx.count(j)) rest.push_back(j);
  }
  const std::size_t fill = p.micro_candidates - std::min(p.micro_candidates, micro_idx.size());
  for (std::size_t k : SampleIndices(rest.size(), fill, rng)) micro_idx.insert(rest[k]);
  PointSet micro;
  for (std::size_t j : micro_idx) micro.push_back(junctions[j]);
  instance.micro_candidates = std::move(micro);

  PointSet incidents;
  for (std::size_t k = 0; k < p.incidents; ++k) {
    double x;
    double y;
    if (rng.Bernoulli(0.8)) {
      const auto& h = hotspots[rng.Below(hotspots.size())];
      x = h[0] + p.hotspot_sigma * Gaussian(rng);
      y = h[1] + p.hotspot_sigma * Gaussian(rng);
    } else {
      x = UniformIn(rng, 0.0, p.width);
      y = UniformIn(rng, 0.0, p.height);
    }
    incidents.push_back({"q" + std::to_string(k + 1), std::clamp(x, 0.0, p.width),
                         std::clamp(y, 0.0, p.height)});
  }
  instance.incidents = std::move(incidents);
  instance.road_network = network;
  instance.Validate();
  return instance;
}

}  // namespace firesite

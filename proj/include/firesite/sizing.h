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

#ifndef FIRESITE_SIZING_H_
#define FIRESITE_SIZING_H_

#include <cstddef>
#include <optional>

#include "firesite/geometry.h"
#include "firesite/road_network.h"
#include "json.hpp"

namespace firesite {

// Analytic constants feeding the station-count and distance-bound rules.
// Defaults follow the case-study values where those are published.
struct SizingConfig {
  double first_class_area = 7.0;   // A1, km^2
  double second_class_area = 4.0;  // A2, km^2
  double area_weight = 0.7;        // beta in (0, 1)
  double tolerance = 0.05;         // epsilon, km
  std::optional<double> macro_radius;  // R1; derived from A1/A2/beta if unset
  double micro_radius = 1.0;       // R2, km
  double total_area = 58.995;      // TAR, km^2 (urban part of the region)
  // N_e; the pipeline overrides it with the instance's existing stations.
  std::size_t existing_stations = 4;
  std::optional<double> station_area;  // SAM; pi * R1^2 if unset
  double max_overlap = 0.30;       // allowed overlap share between macros
  double setup_cost = 1.0;         // SC
  double total_loss_cost = 1.0;    // TLC
  double cost_scale = 1.0;         // alpha of the cost model (housed only)
  double cost_offset = 0.0;        // additive constant of the cost rule
  std::optional<std::size_t> new_stations;  // explicit N overrides the rule

  nlohmann::json ToJson() const;
  static SizingConfig FromJson(const nlohmann::json& doc);
};

struct DistanceBounds {
  double macro_min = 0.0;   // d_s1
  double macro_max = 0.0;   // d_h, also used as d_l1
  double micro_min = 0.0;   // d_s2
  double micro_max = 0.0;   // d_l2
};

// Radius of the diamond-shaped service area A = 2 P^2.
double RadiusFromStandardArea(double area);

// R1 = sqrt((beta A1 + (1 - beta) A2) / 2).
double MacroRadius(double first_class_area, double second_class_area,
                   double area_weight);

double CircularServiceArea(double radius);

// ceil((TAR - N_e SAM) / SAM), never below zero.
std::size_t StationCountByArea(double total_area, std::size_t existing,
                               double station_area);

struct CostModelCount {
  long count = 0;
  bool applicable = false;  // false when count <= 0
};

// int(ln TLC - ln SC + offset), truncated toward zero.
CostModelCount StationCountByCost(double setup_cost, double total_loss_cost,
                                  double cost_offset);

struct MacroBounds {
  double min_separation = 0.0;  // d_s1
  double max_separation = 0.0;  // d_h
};
MacroBounds ComputeMacroBounds(double macro_radius, double tolerance,
                               double max_overlap);

struct MicroBounds {
  double min_distance = 0.0;  // d_s2
  double max_distance = 0.0;  // d_l2
};
MicroBounds ComputeMicroBounds(double macro_radius, double micro_radius,
                               double tolerance);

// Everything the sizing stage derives from a SizingConfig.
struct SizingReport {
  double macro_radius = 0.0;
  double micro_radius = 0.0;
  double station_area = 0.0;
  std::size_t new_stations = 0;
  CostModelCount cost_model;
  DistanceBounds bounds;

  nlohmann::json ToJson() const;
};

SizingReport ComputeSizing(const SizingConfig& config);

// Junction nodes of the road network, plus (when `include_interior` is set)
// points every `spacing_m` meters of arc length along each edge, measured
// from the endpoint with the smaller id, dropping interior points within
// `clearance_m` meters of any junction.
PointSet GenerateCandidates(const RoadNetwork& network, double spacing_m = 200.0,
                            double clearance_m = 50.0,
                            bool include_interior = true);

// Candidates whose distance to at least one center lies in [r_min, r_max].
PointSet AnnulusFilter(const PointSet& candidates, const PointSet& centers,
                       double r_min, double r_max);
// Same, with distances precomputed (rows: candidates, columns: centers).
PointSet AnnulusFilter(const PointSet& candidates, const DistanceIndex& distances,
                       double r_min, double r_max);

}  // namespace firesite

#endif  // FIRESITE_SIZING_H_

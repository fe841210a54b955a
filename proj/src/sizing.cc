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

#include "firesite/sizing.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "firesite/error.h"

namespace firesite {

double RadiusFromStandardArea(double area) {
  if (!(area > 0.0)) throw DomainError("service area must be positive");
  return std::sqrt(area / 2.0);
}

double MacroRadius(double first_class_area, double second_class_area,
                   double area_weight) {
  if (!(area_weight > 0.0 && area_weight < 1.0)) {
    throw DomainError("area weight beta must lie in (0, 1)");
  }
  if (!(first_class_area > 0.0 && second_class_area > 0.0)) {
    throw DomainError("recommended service areas must be positive");
  }
  return std::sqrt(
      (area_weight * first_class_area + (1.0 - area_weight) * second_class_area) /
      2.0);
}

double CircularServiceArea(double radius) {
  return std::numbers::pi * radius * radius;
}

std::size_t StationCountByArea(double total_area, std::size_t existing,
                               double station_area) {
  if (!(station_area > 0.0)) throw DomainError("station area must be positive");
  if (total_area < 0.0) throw DomainError("total area must be non-negative");
  const double needed =
      std::ceil((total_area - static_cast<double>(existing) * station_area) /
                station_area);
  return needed > 0.0 ? static_cast<std::size_t>(needed) : 0;
}

CostModelCount StationCountByCost(double setup_cost, double total_loss_cost,
                                  double cost_offset) {
  if (!(setup_cost > 0.0 && total_loss_cost > 0.0)) {
    throw DomainError("cost model requires positive costs");
  }
  const double raw =
      std::log(total_loss_cost) - std::log(setup_cost) + cost_offset;
  // The log identity can land a hair under an integer.
  const double rounded = std::round(raw);
  const double value = std::abs(raw - rounded) < 1e-12 ? rounded : raw;
  const long count = static_cast<long>(std::trunc(value));
  return {count, count > 0};
}

MacroBounds ComputeMacroBounds(double macro_radius, double tolerance,
                               double max_overlap) {
  if (!(macro_radius > 0.0)) throw DomainError("macro radius must be positive");
  if (tolerance < 0.0) throw DomainError("tolerance must be non-negative");
  return {MinSeparationForOverlap(macro_radius, max_overlap),
          2.0 * macro_radius + tolerance};
}

MicroBounds ComputeMicroBounds(double macro_radius, double micro_radius,
                               double tolerance) {
  if (!(macro_radius > 0.0 && micro_radius > 0.0)) {
    throw DomainError("service radii must be positive");
  }
  if (tolerance < 0.0) throw DomainError("tolerance must be non-negative");
  return {std::max(0.0, macro_radius - micro_radius - tolerance),
          macro_radius + micro_radius + tolerance};
}

SizingReport ComputeSizing(const SizingConfig& config) {
  SizingReport report;
  report.macro_radius =
      config.macro_radius.value_or(MacroRadius(config.first_class_area,
                                               config.second_class_area,
                                               config.area_weight));
  report.micro_radius = config.micro_radius;
  report.station_area =
      config.station_area.value_or(CircularServiceArea(report.macro_radius));
  report.new_stations = config.new_stations.value_or(StationCountByArea(
      config.total_area, config.existing_stations, report.station_area));
  report.cost_model = StationCountByCost(config.setup_cost,
                                         config.total_loss_cost,
                                         config.cost_offset);
  const MacroBounds macro = ComputeMacroBounds(
      report.macro_radius, config.tolerance, config.max_overlap);
  const MicroBounds micro = ComputeMicroBounds(
      report.macro_radius, report.micro_radius, config.tolerance);
  report.bounds = {macro.min_separation, macro.max_separation,
                   micro.min_distance, micro.max_distance};
  return report;
}

nlohmann::json SizingConfig::ToJson() const {
  nlohmann::json doc = {
      {"first_class_area", first_class_area},
      {"second_class_area", second_class_area},
      {"area_weight", area_weight},
      {"tolerance", tolerance},
      {"micro_radius", micro_radius},
      {"total_area", total_area},
      {"existing_stations", existing_stations},
      {"max_overlap", max_overlap},
      {"setup_cost", setup_cost},
      {"total_loss_cost", total_loss_cost},
      {"cost_scale", cost_scale},
      {"cost_offset", cost_offset},
  };
  if (macro_radius) doc["macro_radius"] = *macro_radius;
  if (station_area) doc["station_area"] = *station_area;
  if (new_stations) doc["new_stations"] = *new_stations;
  return doc;
}

SizingConfig SizingConfig::FromJson(const nlohmann::json& doc) {
  SizingConfig c;
  try {
    c.first_class_area = doc.value("first_class_area", c.first_class_area);
    c.second_class_area = doc.value("second_class_area", c.second_class_area);
    c.area_weight = doc.value("area_weight", c.area_weight);
    c.tolerance = doc.value("tolerance", c.tolerance);
    c.micro_radius = doc.value("micro_radius", c.micro_radius);
    c.total_area = doc.value("total_area", c.total_area);
    c.existing_stations = doc.value("existing_stations", c.existing_stations);
    c.max_overlap = doc.value("max_overlap", c.max_overlap);
    c.setup_cost = doc.value("setup_cost", c.setup_cost);
    c.total_loss_cost = doc.value("total_loss_cost", c.total_loss_cost);
    c.cost_scale = doc.value("cost_scale", c.cost_scale);
    c.cost_offset = doc.value("cost_offset", c.cost_offset);
    if (doc.contains("macro_radius")) c.macro_radius = doc.at("macro_radius").get<double>();
    if (doc.contains("station_area")) c.station_area = doc.at("station_area").get<double>();
    if (doc.contains("new_stations")) {
      c.new_stations = doc.at("new_stations").get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("sizing config: ") + ex.what());
  }
  if (!(c.area_weight > 0.0 && c.area_weight < 1.0)) {
    throw ConfigError("sizing config: area_weight must lie in (0, 1)");
  }
  if (c.tolerance < 0.0) throw ConfigError("sizing config: negative tolerance");
  if (!(c.micro_radius > 0.0)) {
    throw ConfigError("sizing config: micro_radius must be positive");
  }
  return c;
}

nlohmann::json SizingReport::ToJson() const {
  return {
      {"macro_radius", macro_radius},
      {"micro_radius", micro_radius},
      {"station_area", station_area},
      {"new_stations", new_stations},
      {"cost_model_count", cost_model.count},
      {"cost_model_applicable", cost_model.applicable},
      {"macro_min_separation", bounds.macro_min},
      {"macro_max_separation", bounds.macro_max},
      {"micro_min_distance", bounds.micro_min},
      {"micro_max_distance", bounds.micro_max},
  };
}

PointSet GenerateCandidates(const RoadNetwork& network, double spacing_m,
                            double clearance_m, bool include_interior) {
  if (!(spacing_m > 0.0)) throw DomainError("candidate spacing must be positive");
  if (clearance_m < 0.0) throw DomainError("clearance must be non-negative");
  const double spacing = spacing_m / 1000.0;
  const double clearance = clearance_m / 1000.0;

  PointSet out;
  std::vector<std::size_t> junctions;
  for (std::size_t n = 0; n < network.nodes().size(); ++n) {
    if (!network.IsJunction(n)) continue;
    const RoadNode& node = network.nodes()[n];
    out.push_back({node.id, node.x, node.y});
    junctions.push_back(n);
  }
  if (!include_interior) return out;

  for (std::size_t e = 0; e < network.edges().size(); ++e) {
    const RoadEdge& edge = network.edges()[e];
    const bool forward = edge.from <= edge.to;
    const double length = edge.length;
    int k = 1;
    // Stop short of the far endpoint; it is a node, not an interior point.
    for (double s = spacing; s < length - 1e-12; s = spacing * ++k) {
      const auto p = network.PointAlong(e, forward ? s : length - s);
      bool clear = true;
      for (std::size_t j : junctions) {
        const RoadNode& node = network.nodes()[j];
        if (std::hypot(p[0] - node.x, p[1] - node.y) <= clearance) {
          clear = false;
          break;
        }
      }
      if (clear) {
        out.push_back({edge.id + "@" + std::to_string(k), p[0], p[1]});
      }
    }
  }
  return out;
}

PointSet AnnulusFilter(const PointSet& candidates, const PointSet& centers,
                       double r_min, double r_max) {
  return AnnulusFilter(candidates, ComputeDistanceIndex(candidates, centers),
                       r_min, r_max);
}

PointSet AnnulusFilter(const PointSet& candidates, const DistanceIndex& distances,
                       double r_min, double r_max) {
  if (r_min > r_max) throw DomainError("annulus: r_min exceeds r_max");
  if (distances.rows() != candidates.size()) {
    throw DomainError("annulus: distance rows do not match candidates");
  }
  if (distances.cols() == 0) {
    LogWarning("annulus filter called with no centers; nothing kept");
    return {};
  }
  PointSet kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t c = 0; c < distances.cols(); ++c) {
      const double d = distances(i, c);
      if (d >= r_min && d <= r_max) {
        kept.push_back(candidates[i]);
        break;
      }
    }
  }
  return kept;
}

}  // namespace firesite

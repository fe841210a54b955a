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

#include "firesite/instance.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "firesite/error.h"
#include "firesite/random.h"

namespace firesite {
namespace {

using nlohmann::json;

json EaToJson(const EAParams& p) {
  return {{"population", p.population},
          {"generations", p.generations},
          {"crossover_probability", p.crossover_probability},
          {"mutation_probability", p.mutation_probability},
          {"elitism", p.elitism}};
}

EAParams EaFromJson(const json& doc, EAParams p) {
  p.population = doc.value("population", p.population);
  p.generations = doc.value("generations", p.generations);
  p.crossover_probability =
      doc.value("crossover_probability", p.crossover_probability);
  p.mutation_probability = doc.value("mutation_probability", p.mutation_probability);
  p.elitism = doc.value("elitism", p.elitism);
  p.Validate();
  return p;
}

}  // namespace

nlohmann::json PointSetToJson(const PointSet& points) {
  json out = json::array();
  for (const Point& p : points) out.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
  return out;
}

PointSet PointSetFromJson(const nlohmann::json& doc) {
  PointSet out;
  for (const auto& p : doc) {
    out.push_back({p.at("id").get<std::string>(), p.at("x").get<double>(),
                   p.at("y").get<double>()});
  }
  return out;
}

void InstanceFile::Validate() const {
  if (schema_version != kInstanceSchemaVersion) {
    throw ValidationError("unsupported instance schema version " +
                          std::to_string(schema_version));
  }
  if (demand_points.empty()) throw ValidationError("instance has no demand points");
  ValidatePointSet(DemandPointSet(), "demand points");
  for (const DemandRecord& r : demand_points) {
    const bool has_attributes = r.accidents.has_value() && r.density.has_value();
    if (!r.demand && !has_attributes) {
      throw ValidationError("demand point '" + r.id +
                            "' needs either a demand value or accidents and "
                            "density");
    }
    if (r.demand && !(*r.demand >= 0.0)) {
      throw ValidationError("demand point '" + r.id + "' has negative demand");
    }
  }
  if (macro_candidates) ValidatePointSet(*macro_candidates, "macro candidates");
  if (micro_candidates) ValidatePointSet(*micro_candidates, "micro candidates");
  ValidatePointSet(existing_stations, "existing stations");
  if (incidents) {
    for (const Point& p : *incidents) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw ValidationError("incident with a non-finite coordinate");
      }
    }
  }
  if (!macro_candidates && !road_network) {
    throw ValidationError(
        "instance needs macro candidates or a road network to generate them");
  }
  if (!micro_candidates && !road_network) {
    throw ValidationError(
        "instance needs micro candidates or a road network to generate them");
  }
}

PointSet InstanceFile::DemandPointSet() const {
  PointSet out;
  out.reserve(demand_points.size());
  for (const DemandRecord& r : demand_points) out.push_back({r.id, r.x, r.y});
  return out;
}

bool InstanceFile::HasRiskAttributes() const {
  for (const DemandRecord& r : demand_points) {
    if (!r.accidents || !r.density) return false;
  }
  return !demand_points.empty();
}

nlohmann::json InstanceFile::ToJson() const {
  json doc;
  doc["schema_version"] = schema_version;
  doc["demand_points"] = json::array();
  for (const DemandRecord& r : demand_points) {
    json rec = {{"id", r.id}, {"x", r.x}, {"y", r.y}};
    if (r.accidents) rec["accidents"] = *r.accidents;
    if (r.density) rec["density"] = *r.density;
    if (r.demand) rec["a"] = *r.demand;
    doc["demand_points"].push_back(std::move(rec));
  }
  if (macro_candidates) doc["macro_candidates"] = PointSetToJson(*macro_candidates);
  if (micro_candidates) doc["micro_candidates"] = PointSetToJson(*micro_candidates);
  doc["existing_stations"] = PointSetToJson(existing_stations);
  if (road_network) doc["road_network"] = road_network->ToJson();
  if (incidents) doc["incidents"] = PointSetToJson(*incidents);
  return doc;
}

InstanceFile InstanceFile::FromJson(const nlohmann::json& doc) {
  InstanceFile inst;
  try {
    inst.schema_version = doc.at("schema_version").get<int>();
    for (const auto& rec : doc.at("demand_points")) {
      DemandRecord r;
      r.id = rec.at("id").get<std::string>();
      r.x = rec.at("x").get<double>();
      r.y = rec.at("y").get<double>();
      if (rec.contains("accidents")) r.accidents = rec.at("accidents").get<long>();
      if (rec.contains("density")) r.density = rec.at("density").get<double>();
      if (rec.contains("a")) r.demand = rec.at("a").get<double>();
      inst.demand_points.push_back(std::move(r));
    }
    if (doc.contains("macro_candidates")) {
      inst.macro_candidates = PointSetFromJson(doc.at("macro_candidates"));
    }
    if (doc.contains("micro_candidates")) {
      inst.micro_candidates = PointSetFromJson(doc.at("micro_candidates"));
    }
    if (doc.contains("existing_stations")) {
      inst.existing_stations = PointSetFromJson(doc.at("existing_stations"));
    }
    if (doc.contains("road_network")) {
      inst.road_network = RoadNetwork::FromJson(doc.at("road_network"));
    }
    if (doc.contains("incidents")) {
      PointSet incidents;
      std::size_t k = 0;
      for (const auto& p : doc.at("incidents")) {
        if (p.is_array()) {
          incidents.push_back({"incident" + std::to_string(k), p.at(0).get<double>(),
                               p.at(1).get<double>()});
        } else {
          incidents.push_back({p.value("id", "incident" + std::to_string(k)),
                               p.at("x").get<double>(), p.at("y").get<double>()});
        }
        ++k;
      }
      inst.incidents = std::move(incidents);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("instance: ") + ex.what());
  }
  inst.Validate();
  return inst;
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw ValidationError("'" + path.string() + "': " + ex.what());
  }
}

void WriteJsonFile(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

InstanceFile LoadInstance(const std::filesystem::path& path) {
  return InstanceFile::FromJson(ReadJsonFile(path));
}

void SaveInstance(const InstanceFile& instance,
                  const std::filesystem::path& path) {
  WriteJsonFile(instance.ToJson(), path);
}

nlohmann::json RunConfig::ToJson() const {
  json doc = {
      {"sizing", sizing.ToJson()},
      {"risk_classes", risk_classes},
      {"risk_weight", risk_weight},
      {"macro_ea", EaToJson(macro_ea)},
      {"micro_ea", EaToJson(micro_ea)},
      {"calibration_runs", calibration_runs},
      {"seed", seed},
      {"high_risk_threshold", high_risk_threshold},
      {"normalize", normalize},
      {"metric", std::string(MetricName(metric))},
      {"adjacency", std::string(AdjacencyModeName(adjacency))},
      {"candidate_spacing_m", candidate_spacing_m},
      {"candidate_clearance_m", candidate_clearance_m},
      {"selection_weights", selection_weights},
  };
  if (workload_cap) doc["workload_cap"] = *workload_cap;
  return doc;
}

RunConfig RunConfig::FromJson(const nlohmann::json& raw) {
  const json& doc = raw.contains("config") ? raw.at("config") : raw;
  RunConfig c;
  try {
    if (doc.contains("sizing")) c.sizing = SizingConfig::FromJson(doc.at("sizing"));
    c.risk_classes = doc.value("risk_classes", c.risk_classes);
    c.risk_weight = doc.value("risk_weight", c.risk_weight);
    if (doc.contains("macro_ea")) c.macro_ea = EaFromJson(doc.at("macro_ea"), c.macro_ea);
    if (doc.contains("micro_ea")) c.micro_ea = EaFromJson(doc.at("micro_ea"), c.micro_ea);
    c.calibration_runs = doc.value("calibration_runs", c.calibration_runs);
    c.seed = doc.value("seed", c.seed);
    c.high_risk_threshold = doc.value("high_risk_threshold", c.high_risk_threshold);
    c.normalize = doc.value("normalize", c.normalize);
    c.metric = ParseMetric(doc.value("metric", std::string("euclidean")));
    c.adjacency = ParseAdjacencyMode(doc.value("adjacency", std::string("nearest")));
    c.candidate_spacing_m = doc.value("candidate_spacing_m", c.candidate_spacing_m);
    c.candidate_clearance_m =
        doc.value("candidate_clearance_m", c.candidate_clearance_m);
    if (doc.contains("workload_cap")) c.workload_cap = doc.at("workload_cap").get<double>();
    c.selection_weights = doc.value("selection_weights", c.selection_weights);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("run config: ") + ex.what());
  }
  if (c.risk_classes < 1) throw ConfigError("run config: risk_classes must be >= 1");
  if (!(c.risk_weight > 0.0 && c.risk_weight < 1.0)) {
    throw ConfigError("run config: risk_weight must lie in (0, 1)");
  }
  if (c.calibration_runs < 1) throw ConfigError("run config: calibration_runs must be >= 1");
  if (c.high_risk_threshold < 0.0) {
    throw ConfigError("run config: high_risk_threshold must be non-negative");
  }
  if (c.selection_weights.size() != 3) {
    throw ConfigError("run config: selection_weights needs three entries");
  }
  return c;
}

EAParams RunConfig::MacroParams() const {
  EAParams p = macro_ea;
  p.seed = DeriveSeed(seed, 1);
  return p;
}

EAParams RunConfig::CalibrationParams() const {
  EAParams p = micro_ea;
  p.seed = DeriveSeed(seed, 2);
  return p;
}

EAParams RunConfig::MicroParams() const {
  EAParams p = micro_ea;
  p.seed = DeriveSeed(seed, 3);
  return p;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  return RunConfig::FromJson(ReadJsonFile(path));
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string HexDigest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace firesite

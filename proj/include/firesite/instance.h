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

#ifndef FIRESITE_INSTANCE_H_
#define FIRESITE_INSTANCE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "firesite/evolutionary.h"
#include "firesite/geometry.h"
#include "firesite/macro_model.h"
#include "firesite/road_network.h"
#include "firesite/sizing.h"
#include "json.hpp"

namespace firesite {

inline constexpr int kInstanceSchemaVersion = 1;

// A community. Either `demand` is given directly, or both `accidents` and
// `density` are, and the risk stage derives the demand.
struct DemandRecord {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  std::optional<long> accidents;
  std::optional<double> density;
  std::optional<double> demand;
};

struct InstanceFile {
  int schema_version = kInstanceSchemaVersion;
  std::vector<DemandRecord> demand_points;
  std::optional<PointSet> macro_candidates;
  std::optional<PointSet> micro_candidates;
  PointSet existing_stations;
  std::optional<RoadNetwork> road_network;
  std::optional<PointSet> incidents;

  // Throws ValidationError: unknown schema, no demand points, duplicate ids,
  // demand records without a usable risk source.
  void Validate() const;

  PointSet DemandPointSet() const;
  // True when every record carries attributes for the risk stage.
  bool HasRiskAttributes() const;

  nlohmann::json ToJson() const;
  static InstanceFile FromJson(const nlohmann::json& doc);
};

InstanceFile LoadInstance(const std::filesystem::path& path);
void SaveInstance(const InstanceFile& instance, const std::filesystem::path& path);

nlohmann::json PointSetToJson(const PointSet& points);
PointSet PointSetFromJson(const nlohmann::json& doc);

// Every tunable of a run. Defaults are the case-study settings.
struct RunConfig {
  SizingConfig sizing;
  int risk_classes = 4;
  double risk_weight = 0.5;  // gamma
  EAParams macro_ea;
  EAParams micro_ea;
  std::size_t calibration_runs = 10;  // M
  std::uint64_t seed = 1;
  double high_risk_threshold = 4.0;
  bool normalize = false;
  Metric metric = Metric::kEuclidean;
  AdjacencyMode adjacency = AdjacencyMode::kNearest;
  double candidate_spacing_m = 200.0;
  double candidate_clearance_m = 50.0;
  // When set, the calibration stage is skipped and this cap is used.
  std::optional<double> workload_cap;
  std::vector<double> selection_weights = {1.0, 1.0, 1.0};

  nlohmann::json ToJson() const;
  // Accepts either a config document or a run manifest carrying one under
  // "config". Missing keys keep their defaults.
  static RunConfig FromJson(const nlohmann::json& doc);

  // Stage streams derived from `seed`.
  EAParams MacroParams() const;
  EAParams CalibrationParams() const;
  EAParams MicroParams() const;
};

RunConfig LoadConfig(const std::filesystem::path& path);

// 64-bit FNV-1a, used for config and output fingerprints.
std::uint64_t Fnv1a64(std::string_view bytes);
std::string HexDigest(std::uint64_t value);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace firesite

#endif  // FIRESITE_INSTANCE_H_

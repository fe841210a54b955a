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

#ifndef FIRESITE_IO_H_
#define FIRESITE_IO_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "firesite/evolutionary.h"
#include "firesite/geometry.h"
#include "firesite/macro_model.h"
#include "firesite/metrics.h"
#include "firesite/micro_model.h"
#include "firesite/risk.h"
#include "json.hpp"

namespace firesite {

// Shortest decimal form that parses back to the same double.
std::string FormatNumber(double value);
double ParseNumber(std::string_view text);

// Plain comma-separated tables: no quoting, first line is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t Column(std::string_view name) const;
};
CsvTable ReadCsv(const std::filesystem::path& path);

// id,accidents,density
std::vector<RiskInput> ReadRiskInputsCsv(const std::filesystem::path& path);
// id,r_a,r_p,a
void WriteRiskCsv(const std::filesystem::path& path,
                  std::span<const RiskScore> scores);

// generation,best_fitness,best_violation
void WriteTraceCsv(const std::filesystem::path& path,
                   std::span<const double> fitness,
                   std::span<const double> violation);

// One row per plan: solution,fitness,feasible,sites
struct MacroPlanRow {
  std::size_t solution = 0;
  double fitness = 0.0;
  bool feasible = false;
  std::vector<std::string> sites;
};
void WriteMacroPlanCsv(const std::filesystem::path& path,
                       std::span<const MacroPlanRow> rows);

// Macro plan document: selected and existing stations, radius, coverage.
nlohmann::json MacroPlanToJson(const MacroProblem& problem, const MacroPlan& plan);
struct MacroPlanFile {
  PointSet selected;
  PointSet existing;
  double radius = 0.0;
  double fitness = 0.0;
  double violation = 0.0;
  bool feasible = false;

  // Existing stations followed by the new ones.
  PointSet Anchors() const;
};
MacroPlanFile ReadMacroPlan(const std::filesystem::path& path);

// solution,F1,F2,F3,feasible,sites (site ids joined by ';')
struct ArchiveRow {
  std::size_t solution = 0;
  std::vector<double> objectives;
  bool feasible = false;
  std::vector<std::string> sites;
};
std::vector<ArchiveRow> ArchiveRows(const ParetoArchive& archive,
                                    const PointSet& candidates);
void WriteArchiveCsv(const std::filesystem::path& path,
                     std::span<const ArchiveRow> rows);
std::vector<ArchiveRow> ReadArchiveCsv(const std::filesystem::path& path);

// generation,solution,F1,F2,F3 for every archive member of every generation.
void WriteHistoryCsv(const std::filesystem::path& path,
                     std::span<const ParetoArchive> history);
struct HistoryTable {
  std::vector<std::size_t> generations;
  std::vector<Front> fronts;
};
HistoryTable ReadHistoryCsv(const std::filesystem::path& path);

// generation,size,hv_nadir,hv_fixed,spacing
void WriteIndicatorCsv(const std::filesystem::path& path,
                       std::span<const IndicatorRow> rows);

// calibration.json, calibration.csv (run,solutions,max_mean_workload) and one
// calibration_run_<r>.csv archive per included run.
void WriteCalibration(const std::filesystem::path& dir,
                      const WorkloadCalibration& calibration,
                      const PointSet& candidates);
double ReadCalibrationCap(const std::filesystem::path& path);

struct GeoFeature {
  Point location;
  nlohmann::json properties;
};
// Point FeatureCollection in planar kilometers (no geographic CRS).
nlohmann::json PointsGeoJson(std::span<const GeoFeature> features);

std::string JoinIds(std::span<const std::string> ids);
std::vector<std::string> SplitIds(std::string_view joined);

// Maps site ids back to candidate indices; throws ValidationError on unknown
// ids.
std::vector<std::size_t> IndicesOfIds(const PointSet& candidates,
                                      std::span<const std::string> ids);

}  // namespace firesite

#endif  // FIRESITE_IO_H_

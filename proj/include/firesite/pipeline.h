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

#ifndef FIRESITE_PIPELINE_H_
#define FIRESITE_PIPELINE_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "firesite/error.h"
#include "firesite/evolutionary.h"
#include "firesite/geometry.h"
#include "firesite/instance.h"
#include "firesite/io.h"
#include "firesite/macro_model.h"
#include "firesite/metrics.h"
#include "firesite/micro_model.h"
#include "firesite/risk.h"
#include "firesite/selection.h"
#include "firesite/sizing.h"

namespace firesite {

// Raised when a pipeline stage fails. Keeps the exit code of the cause.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const Error& cause)
      : Error("stage '" + stage + "': " + cause.what()),
        stage_(stage),
        code_(cause.exit_code()) {}
  const std::string& stage() const { return stage_; }
  int exit_code() const override { return code_; }

 private:
  std::string stage_;
  int code_;
};

struct DemandData {
  PointSet points;
  std::vector<double> demand;
  // Present for records scored from accidents and density.
  std::vector<RiskScore> scores;
};

// Records with an explicit demand value keep it; the rest are scored.
DemandData ComputeDemand(const InstanceFile& instance, const RunConfig& config);

// Sizing with N_e taken from the instance's existing stations.
SizingReport SizingFor(const InstanceFile& instance, const RunConfig& config);

// The instance's macro candidates, or road-network candidates kept by the
// [d_s1, d_h] annulus around the existing stations.
PointSet MacroCandidates(const InstanceFile& instance, const RunConfig& config,
                         const SizingReport& sizing);
MacroProblem BuildMacroProblem(const InstanceFile& instance,
                               const RunConfig& config, const DemandData& demand,
                               const SizingReport& sizing, PointSet candidates);

// Micro pool (given or generated) kept by the [d_s2, d_l2] annulus around
// the anchors.
PointSet MicroCandidates(const InstanceFile& instance, const RunConfig& config,
                         const SizingReport& sizing, const PointSet& anchors);
MicroProblem BuildMicroProblem(const InstanceFile& instance,
                               const RunConfig& config, const DemandData& demand,
                               const SizingReport& sizing, PointSet candidates,
                               PointSet anchors);

// Macro stations at R1 plus the micro plan's stations at R2.
CoverageReport PlanCoverage(const InstanceFile& instance, const RunConfig& config,
                            const DemandData& demand, const SizingReport& sizing,
                            const PointSet& anchors, const PointSet& micro_sites);

void WriteMacroOutputs(const std::filesystem::path& dir,
                       const MacroProblem& problem, const MacroSolution& solution);
void WriteMicroOutputs(const std::filesystem::path& dir,
                       const MicroProblem& problem, const Nsga2Result& result,
                       bool geojson);
// metrics.csv from a persisted micro_history.csv.
void WriteIndicators(const std::filesystem::path& history_csv,
                     const std::filesystem::path& path, bool normalize);
// Table-style summary of the four representatives; `rows` is the archive in
// the order the representatives index into.
void WriteRepresentatives(const std::filesystem::path& dir,
                          const RepresentativeSet& reps,
                          std::span<const ArchiveRow> rows,
                          std::span<const CoverageReport> coverage,
                          const PointSet& micro_candidates,
                          const PointSet& anchors);

struct PipelineResult {
  bool feasible = false;
  std::vector<std::string> stages;
};

// Runs every stage in order, persisting each stage's outputs under `out`
// together with manifest.json.
PipelineResult RunPipeline(const InstanceFile& instance, const RunConfig& config,
                           const std::filesystem::path& out);

}  // namespace firesite

#endif  // FIRESITE_PIPELINE_H_

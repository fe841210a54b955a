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

#include "firesite/pipeline.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <utility>

#include "firesite/io.h"
#include "firesite/selection.h"

namespace firesite {
namespace {

const RoadNetwork* NetworkOf(const InstanceFile& instance) {
  return instance.road_network ? &*instance.road_network : nullptr;
}

PointSet CandidatePool(const InstanceFile& instance, const RunConfig& config,
                       const std::optional<PointSet>& given, bool interior) {
  if (given) return *given;
  if (!instance.road_network) {
    throw ConfigError("no candidate list and no road network to generate one");
  }
  return GenerateCandidates(*instance.road_network, config.candidate_spacing_m,
                            config.candidate_clearance_m, interior);
}

std::string FileDigest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return HexDigest(Fnv1a64(bytes.str()));
}

template <typename Fn>
auto RunStage(const std::string& name, std::vector<std::string>& done, Fn&& fn) {
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      done.push_back(name);
    } else {
      auto value = fn();
      done.push_back(name);
      return value;
    }
  } catch (const StageError&) {
    throw;
  } catch (const Error& ex) {
    throw StageError(name, ex);
  }
}

nlohmann::json RatesToJson(const CoverageReport& r) {
  return {{"high_risk_rate", r.high_risk_rate ? nlohmann::json(*r.high_risk_rate)
                                              : nlohmann::json()},
          {"demand_rate", r.demand_rate},
          {"incident_rate", r.incident_rate ? nlohmann::json(*r.incident_rate)
                                            : nlohmann::json()}};
}

std::string OptionalRate(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string();
}

}  // namespace

DemandData ComputeDemand(const InstanceFile& instance, const RunConfig& config) {
  instance.Validate();
  DemandData out;
  out.points = instance.DemandPointSet();
  out.demand.assign(instance.demand_points.size(), 0.0);

  std::vector<RiskInput> inputs;
  std::vector<std::size_t> scored;
  for (std::size_t i = 0; i < instance.demand_points.size(); ++i) {
    const DemandRecord& r = instance.demand_points[i];
    if (r.demand) {
      out.demand[i] = *r.demand;
    } else {
      inputs.push_back({r.id, *r.accidents, *r.density});
      scored.push_back(i);
    }
  }
  if (!inputs.empty()) {
    out.scores = ScoreRisk(inputs, config.risk_classes, config.risk_weight);
    for (std::size_t k = 0; k < scored.size(); ++k) {
      out.demand[scored[k]] = out.scores[k].demand;
    }
  }
  return out;
}

SizingReport SizingFor(const InstanceFile& instance, const RunConfig& config) {
  SizingConfig sizing = config.sizing;
  sizing.existing_stations = instance.existing_stations.size();
  return ComputeSizing(sizing);
}

PointSet MacroCandidates(const InstanceFile& instance, const RunConfig& config,
                         const SizingReport& sizing) {
  if (instance.macro_candidates) return *instance.macro_candidates;
  const PointSet pool = CandidatePool(instance, config, std::nullopt, true);
  if (instance.existing_stations.empty()) return pool;
  const DistanceIndex d = ComputeDistanceIndex(pool, instance.existing_stations,
                                               config.metric, NetworkOf(instance));
  return AnnulusFilter(pool, d, sizing.bounds.macro_min, sizing.bounds.macro_max);
}

MacroProblem BuildMacroProblem(const InstanceFile& instance,
                               const RunConfig& config, const DemandData& demand,
                               const SizingReport& sizing, PointSet candidates) {
  MacroProblemSpec spec;
  spec.demand_points = demand.points;
  spec.demand = demand.demand;
  spec.candidates = std::move(candidates);
  spec.existing = instance.existing_stations;
  spec.radius = sizing.macro_radius;
  spec.min_separation = sizing.bounds.macro_min;
  spec.max_separation = sizing.bounds.macro_max;
  spec.new_stations = sizing.new_stations;
  spec.adjacency = config.adjacency;
  spec.metric = config.metric;
  spec.network = NetworkOf(instance);
  return MacroProblem(std::move(spec));
}

PointSet MicroCandidates(const InstanceFile& instance, const RunConfig& config,
                         const SizingReport& sizing, const PointSet& anchors) {
  const PointSet pool = CandidatePool(instance, config, instance.micro_candidates, false);
  const DistanceIndex d =
      ComputeDistanceIndex(pool, anchors, config.metric, NetworkOf(instance));
  return AnnulusFilter(pool, d, sizing.bounds.micro_min, sizing.bounds.micro_max);
}

MicroProblem BuildMicroProblem(const InstanceFile& instance,
                               const RunConfig& config, const DemandData& demand,
                               const SizingReport& sizing, PointSet candidates,
                               PointSet anchors) {
  MicroProblemSpec spec;
  spec.demand_points = demand.points;
  spec.demand = demand.demand;
  spec.candidates = std::move(candidates);
  spec.anchors = std::move(anchors);
  spec.radius = sizing.micro_radius;
  spec.min_anchor_distance = sizing.bounds.micro_min;
  spec.max_anchor_distance = sizing.bounds.micro_max;
  spec.workload_cap = config.workload_cap;
  spec.metric = config.metric;
  spec.network = NetworkOf(instance);
  return MicroProblem(std::move(spec));
}

CoverageReport PlanCoverage(const InstanceFile& instance, const RunConfig& config,
                            const DemandData& demand, const SizingReport& sizing,
                            const PointSet& anchors, const PointSet& micro_sites) {
  std::vector<Station> stations;
  for (const Point& p : anchors) stations.push_back({p, sizing.macro_radius});
  for (const Point& p : micro_sites) stations.push_back({p, sizing.micro_radius});
  return ComputeCoverageReport(stations, demand.points, demand.demand,
                               instance.incidents ? &*instance.incidents : nullptr,
                               config.high_risk_threshold);
}

void WriteMacroOutputs(const std::filesystem::path& dir,
                       const MacroProblem& problem, const MacroSolution& solution) {
  const MacroPlan& plan = solution.plan;
  WriteJsonFile(MacroPlanToJson(problem, plan), dir / "macro_plan.json");
  const MacroPlanRow row{0, plan.total_covered_demand, plan.feasible,
                         plan.selected_ids};
  WriteMacroPlanCsv(dir / "macro_plan.csv", std::span(&row, 1));
  WriteTraceCsv(dir / "macro_trace.csv", solution.trace, solution.trace_violation);

  std::vector<GeoFeature> features;
  for (const Point& p : problem.spec().existing) {
    features.push_back({p, {{"role", "existing"}, {"radius", problem.spec().radius}}});
  }
  for (std::size_t j : plan.selected) {
    features.push_back({problem.spec().candidates[j],
                        {{"role", "new"}, {"radius", problem.spec().radius}}});
  }
  WriteJsonFile(PointsGeoJson(features), dir / "macro_plan.geojson");
}

void WriteMicroOutputs(const std::filesystem::path& dir,
                       const MicroProblem& problem, const Nsga2Result& result,
                       bool geojson) {
  const PointSet& candidates = problem.spec().candidates;
  const auto rows = ArchiveRows(result.final_archive, candidates);
  WriteArchiveCsv(dir / "micro_archive.csv", rows);
  WriteHistoryCsv(dir / "micro_history.csv", result.history);
  if (!geojson) return;
  std::vector<GeoFeature> features;
  for (const ArchiveRow& row : rows) {
    for (std::size_t j : IndicesOfIds(candidates, row.sites)) {
      features.push_back({candidates[j],
                          {{"solution", row.solution}, {"radius", problem.spec().radius}}});
    }
  }
  WriteJsonFile(PointsGeoJson(features), dir / "micro_plans.geojson");
}

void WriteIndicators(const std::filesystem::path& history_csv,
                     const std::filesystem::path& path, bool normalize) {
  const HistoryTable history = ReadHistoryCsv(history_csv);
  WriteIndicatorCsv(path, IndicatorTrace(history.fronts, history.generations, normalize));
}

void WriteRepresentatives(const std::filesystem::path& dir,
                          const RepresentativeSet& reps,
                          std::span<const ArchiveRow> rows,
                          std::span<const CoverageReport> coverage,
                          const PointSet& micro_candidates,
                          const PointSet& anchors) {
  std::ofstream out(dir / "representatives.csv");
  if (!out) throw Error("cannot write representatives.csv");
  out << "plan,solution,F1,F2,F3,high_risk_rate,demand_rate,incident_rate,sites\n";
  std::vector<GeoFeature> features;
  for (const Point& p : anchors) features.push_back({p, {{"plan", "macro"}}});
  const auto all = reps.All();
  for (std::size_t k = 0; k < all.size(); ++k) {
    const Representative& r = *all[k];
    const ArchiveRow& row = rows[r.index];
    const CoverageReport& c = coverage[k];
    out << r.label << ',' << row.solution;
    for (double v : r.objectives) out << ',' << FormatNumber(v);
    out << ',' << OptionalRate(c.high_risk_rate) << ',' << FormatNumber(c.demand_rate)
        << ',' << OptionalRate(c.incident_rate) << ',' << JoinIds(row.sites) << '\n';
    for (std::size_t j : IndicesOfIds(micro_candidates, row.sites)) {
      nlohmann::json props = RatesToJson(c);
      props["plan"] = std::string(1, r.label);
      props["solution"] = row.solution;
      features.push_back({micro_candidates[j], std::move(props)});
    }
  }
  WriteJsonFile(PointsGeoJson(features), dir / "representatives.geojson");
}

PipelineResult RunPipeline(const InstanceFile& instance, const RunConfig& config,
                           const std::filesystem::path& out) {
  // Validation happens before anything is written or solved.
  instance.Validate();
  std::filesystem::create_directories(out);
  PipelineResult result;
  std::vector<std::string>& done = result.stages;

  const EAParams macro_params = config.MacroParams();
  const EAParams calibration_params = config.CalibrationParams();
  const EAParams micro_params = config.MicroParams();

  nlohmann::json manifest = {
      {"schema_version", kInstanceSchemaVersion},
      {"seed", config.seed},
      {"stage_seeds",
       {{"solve_macro", macro_params.seed},
        {"calibrate", calibration_params.seed},
        {"solve_micro", micro_params.seed}}},
      {"config_hash", HexDigest(Fnv1a64(config.ToJson().dump()))},
      {"instance_hash", HexDigest(Fnv1a64(instance.ToJson().dump()))},
      {"config", config.ToJson()},
  };
  std::vector<std::string> files;
  auto finish_manifest = [&](const std::string& failed) {
    manifest["stages"] = done;
    if (!failed.empty()) manifest["failed_stage"] = failed;
    nlohmann::json hashes = nlohmann::json::object();
    for (const std::string& f : files) hashes[f] = FileDigest(out / f);
    manifest["outputs"] = hashes;
    WriteJsonFile(manifest, out / "manifest.json");
  };
  auto persisted = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) files.emplace_back(n);
  };

  try {
    SaveInstance(instance, out / "instance.json");
    WriteJsonFile(config.ToJson(), out / "config.json");
    persisted({"instance.json", "config.json"});

    const DemandData demand = RunStage("risk", done, [&] {
      DemandData d = ComputeDemand(instance, config);
      std::vector<RiskScore> all;
      for (std::size_t i = 0; i < d.points.size(); ++i) {
        RiskScore s{d.points[i].id, 0, 0, d.demand[i]};
        for (const RiskScore& r : d.scores) {
          if (r.id == s.id) s = r;
        }
        all.push_back(s);
      }
      WriteRiskCsv(out / "risk.csv", all);
      return d;
    });
    persisted({"risk.csv"});

    const SizingReport sizing = RunStage("sizing", done, [&] {
      SizingReport s = SizingFor(instance, config);
      WriteJsonFile(s.ToJson(), out / "sizing.json");
      return s;
    });
    persisted({"sizing.json"});

    PointSet macro_candidates = RunStage("macro_candidates", done, [&] {
      PointSet c = MacroCandidates(instance, config, sizing);
      WriteJsonFile(PointSetToJson(c), out / "macro_candidates.json");
      return c;
    });
    persisted({"macro_candidates.json"});

    const auto [macro_feasible, anchors] = RunStage("solve_macro", done, [&] {
      const MacroProblem problem =
          BuildMacroProblem(instance, config, demand, sizing, macro_candidates);
      const MacroSolution solution = SolveMacro(problem, macro_params);
      WriteMacroOutputs(out, problem, solution);
      PointSet anchors = instance.existing_stations;
      for (std::size_t j : solution.plan.selected) {
        anchors.push_back(problem.spec().candidates[j]);
      }
      return std::make_pair(solution.plan.feasible, anchors);
    });
    persisted({"macro_plan.json", "macro_plan.csv", "macro_plan.geojson",
               "macro_trace.csv"});

    const PointSet micro_candidates = RunStage("micro_candidates", done, [&] {
      PointSet c = MicroCandidates(instance, config, sizing, anchors);
      WriteJsonFile(PointSetToJson(c), out / "micro_candidates.json");
      return c;
    });
    persisted({"micro_candidates.json"});

    const MicroProblem uncapped = BuildMicroProblem(
        instance, config, demand, sizing, micro_candidates, anchors);

    const double cap = RunStage("calibrate", done, [&] {
      if (config.workload_cap) {
        WriteJsonFile({{"cap", *config.workload_cap}, {"source", "config"}},
                      out / "calibration.json");
        files.emplace_back("calibration.json");
        return *config.workload_cap;
      }
      const WorkloadCalibration calibration = CalibrateWorkload(
          uncapped.WithWorkloadCap(std::nullopt), calibration_params,
          config.calibration_runs);
      WriteCalibration(out, calibration, micro_candidates);
      files.emplace_back("calibration.json");
      files.emplace_back("calibration.csv");
      for (std::size_t r : calibration.included_runs) {
        files.push_back("calibration_run_" + std::to_string(r) + ".csv");
      }
      return calibration.cap;
    });
    manifest["workload_cap"] = cap;

    const MicroProblem micro = uncapped.WithWorkloadCap(cap);
    const Nsga2Result solved = RunStage("solve_micro", done, [&] {
      Nsga2Result r = SolveMicro(micro, micro_params);
      WriteMicroOutputs(out, micro, r, true);
      return r;
    });
    persisted({"micro_archive.csv", "micro_history.csv", "micro_plans.geojson"});

    RunStage("metrics", done, [&] {
      WriteIndicators(out / "micro_history.csv", out / "metrics.csv", config.normalize);
    });
    persisted({"metrics.csv"});

    RunStage("select", done, [&] {
      const RepresentativeSet reps =
          PickRepresentatives(solved.final_archive, config.selection_weights);
      const auto rows = ArchiveRows(solved.final_archive, micro_candidates);
      std::vector<CoverageReport> coverage;
      for (const Representative* r : reps.All()) {
        PointSet sites;
        for (std::size_t j : IndicesOfIds(micro_candidates, rows[r->index].sites)) {
          sites.push_back(micro_candidates[j]);
        }
        coverage.push_back(
            PlanCoverage(instance, config, demand, sizing, anchors, sites));
      }
      WriteRepresentatives(out, reps, rows, coverage, micro_candidates, anchors);
    });
    persisted({"representatives.csv", "representatives.geojson"});

    result.feasible = macro_feasible && solved.final_archive.feasible;
    manifest["feasible"] = result.feasible;
  } catch (const StageError& ex) {
    finish_manifest(ex.stage());
    throw;
  }
  finish_manifest("");
  return result;
}

}  // namespace firesite

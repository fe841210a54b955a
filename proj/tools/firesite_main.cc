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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "firesite/error.h"
#include "firesite/instance.h"
#include "firesite/io.h"
#include "firesite/oracle.h"
#include "firesite/pipeline.h"
#include "firesite/selection.h"
#include "firesite/sizing.h"
#include "firesite/synth.h"

namespace fs = std::filesystem;
using namespace firesite;

namespace {

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  bool tiny = false;
};

// Inputs shared by the subcommands that work on an instance.
struct InstanceOptions {
  std::string instance;
  std::string macro_plan;
  std::string candidates;
  std::string calibration;
  std::optional<double> cap;
};

RunConfig ResolveConfig(const GlobalOptions& g) {
  RunConfig config = g.config.empty() ? RunConfig{} : LoadConfig(g.config);
  // Tiny instances are sized by their own region unless a config says otherwise.
  if (g.tiny && g.config.empty()) {
    config.sizing.total_area = SynthParams::Tiny(1).area();
  }
  if (g.seed) config.seed = *g.seed;
  return config;
}

fs::path OutDir(const GlobalOptions& g) {
  fs::create_directories(g.out);
  return g.out;
}

// Everything needed to build the micro problem from persisted stage files.
struct MicroContext {
  InstanceFile instance;
  DemandData demand;
  SizingReport sizing;
  PointSet anchors;
  PointSet candidates;
};

MicroContext LoadMicroContext(const InstanceOptions& o, const RunConfig& config) {
  if (o.macro_plan.empty()) throw ValidationError("--macro-plan is required");
  MicroContext ctx;
  ctx.instance = LoadInstance(o.instance);
  ctx.demand = ComputeDemand(ctx.instance, config);
  ctx.sizing = SizingFor(ctx.instance, config);
  ctx.anchors = ReadMacroPlan(o.macro_plan).Anchors();
  ctx.candidates =
      o.candidates.empty()
          ? MicroCandidates(ctx.instance, config, ctx.sizing, ctx.anchors)
          : PointSetFromJson(ReadJsonFile(o.candidates));
  return ctx;
}

MicroProblem MicroProblemOf(const MicroContext& ctx, const RunConfig& config) {
  return BuildMicroProblem(ctx.instance, config, ctx.demand, ctx.sizing,
                           ctx.candidates, ctx.anchors);
}

std::optional<double> ResolveCap(const InstanceOptions& o, const RunConfig& config) {
  if (o.cap) return o.cap;
  if (!o.calibration.empty()) return ReadCalibrationCap(o.calibration);
  return config.workload_cap;
}

void AddInstanceOptions(CLI::App* cmd, InstanceOptions& o, bool micro) {
  cmd->add_option("--instance", o.instance, "instance JSON")->required();
  if (!micro) return;
  cmd->add_option("--macro-plan", o.macro_plan, "macro_plan.json from solve-macro");
  cmd->add_option("--candidates", o.candidates,
                  "micro candidate PointSet JSON (default: ring-filtered pool)");
}

int Risk(const GlobalOptions& g, const std::string& input) {
  const RunConfig config = ResolveConfig(g);
  const auto scores =
      ScoreRisk(ReadRiskInputsCsv(input), config.risk_classes, config.risk_weight);
  WriteRiskCsv(OutDir(g) / "risk.csv", scores);
  return kExitOk;
}

int Size(const GlobalOptions& g) {
  SizingConfig sizing;
  if (!g.config.empty()) {
    const nlohmann::json doc = ReadJsonFile(g.config);
    const nlohmann::json& body = doc.contains("config") ? doc.at("config") : doc;
    sizing = SizingConfig::FromJson(body.contains("sizing") ? body.at("sizing") : body);
  }
  const SizingReport report = ComputeSizing(sizing);
  std::cout << report.ToJson().dump(2) << '\n';
  if (g.out != ".") WriteJsonFile(report.ToJson(), OutDir(g) / "sizing.json");
  return kExitOk;
}

int Candidates(const GlobalOptions& g, const std::string& network_path,
               bool junctions_only) {
  const RunConfig config = ResolveConfig(g);
  const RoadNetwork network = RoadNetwork::FromJson(ReadJsonFile(network_path));
  const PointSet points =
      GenerateCandidates(network, config.candidate_spacing_m,
                         config.candidate_clearance_m, !junctions_only);
  WriteJsonFile(PointSetToJson(points), OutDir(g) / "candidates.json");
  std::cout << points.size() << " candidates\n";
  return kExitOk;
}

int SolveMacroCommand(const GlobalOptions& g, const InstanceOptions& o) {
  const RunConfig config = ResolveConfig(g);
  const InstanceFile instance = LoadInstance(o.instance);
  const DemandData demand = ComputeDemand(instance, config);
  const SizingReport sizing = SizingFor(instance, config);
  const MacroProblem problem = BuildMacroProblem(
      instance, config, demand, sizing, MacroCandidates(instance, config, sizing));
  const MacroSolution solution = SolveMacro(problem, config.MacroParams());
  WriteMacroOutputs(OutDir(g), problem, solution);
  std::cout << "covered demand " << FormatNumber(solution.plan.total_covered_demand)
            << (solution.plan.feasible ? "" : " (infeasible)") << '\n';
  return solution.plan.feasible ? kExitOk : kExitInfeasible;
}

int Calibrate(const GlobalOptions& g, const InstanceOptions& o) {
  const RunConfig config = ResolveConfig(g);
  const MicroContext ctx = LoadMicroContext(o, config);
  const MicroProblem problem = MicroProblemOf(ctx, config).WithWorkloadCap(std::nullopt);
  const WorkloadCalibration calibration = CalibrateWorkload(
      problem, config.CalibrationParams(), config.calibration_runs);
  const fs::path out = OutDir(g);
  WriteJsonFile(PointSetToJson(ctx.candidates), out / "micro_candidates.json");
  WriteCalibration(out, calibration, ctx.candidates);
  std::cout << "S = " << FormatNumber(calibration.cap) << '\n';
  return kExitOk;
}

int SolveMicroCommand(const GlobalOptions& g, const InstanceOptions& o, bool geojson) {
  const RunConfig config = ResolveConfig(g);
  const MicroContext ctx = LoadMicroContext(o, config);
  const auto cap = ResolveCap(o, config);
  if (!cap) throw ConfigError("solve-micro needs --cap, --calibration or workload_cap");
  const MicroProblem problem = MicroProblemOf(ctx, config).WithWorkloadCap(cap);
  const Nsga2Result result = SolveMicro(problem, config.MicroParams());
  WriteMicroOutputs(OutDir(g), problem, result, geojson);
  std::cout << result.final_archive.members.size() << " archive members"
            << (result.final_archive.feasible ? "" : " (infeasible)") << '\n';
  return result.final_archive.feasible ? kExitOk : kExitInfeasible;
}

int Metrics(const GlobalOptions& g, const std::string& history_path, bool normalize) {
  const RunConfig config = ResolveConfig(g);
  WriteIndicators(history_path, OutDir(g) / "metrics.csv",
                  normalize || config.normalize);
  return kExitOk;
}

int Select(const GlobalOptions& g, const InstanceOptions& o,
           const std::string& archive_path) {
  const RunConfig config = ResolveConfig(g);
  const MicroContext ctx = LoadMicroContext(o, config);
  const auto rows = ReadArchiveCsv(archive_path);
  if (rows.empty()) throw ValidationError("archive is empty");
  std::vector<std::vector<double>> objectives;
  std::vector<std::size_t> ids;
  for (const ArchiveRow& r : rows) {
    objectives.push_back(r.objectives);
    ids.push_back(r.solution);
  }
  const RepresentativeSet reps =
      PickRepresentatives(objectives, ids, config.selection_weights);
  std::vector<CoverageReport> coverage;
  for (const Representative* r : reps.All()) {
    PointSet sites;
    for (std::size_t j : IndicesOfIds(ctx.candidates, rows[r->index].sites)) {
      sites.push_back(ctx.candidates[j]);
    }
    coverage.push_back(PlanCoverage(ctx.instance, config, ctx.demand, ctx.sizing,
                                    ctx.anchors, sites));
  }
  WriteRepresentatives(OutDir(g), reps, rows, coverage, ctx.candidates, ctx.anchors);
  return kExitOk;
}

int Oracle(const GlobalOptions& g, const InstanceOptions& o, const std::string& tier) {
  const RunConfig config = ResolveConfig(g);
  const fs::path out = OutDir(g);
  if (tier == "macro") {
    const InstanceFile instance = LoadInstance(o.instance);
    const DemandData demand = ComputeDemand(instance, config);
    const SizingReport sizing = SizingFor(instance, config);
    const MacroProblem problem = BuildMacroProblem(
        instance, config, demand, sizing, MacroCandidates(instance, config, sizing));
    const ExactMacroResult exact = BruteForceMacro(problem);
    std::vector<MacroPlanRow> rows;
    for (const auto& subset : exact.optimal_subsets) {
      MacroPlanRow row{rows.size(), exact.best_fitness, true, {}};
      for (std::size_t j : subset) row.sites.push_back(problem.spec().candidates[j].id);
      rows.push_back(std::move(row));
    }
    WriteMacroPlanCsv(out / "oracle_macro.csv", rows);
    std::cout << exact.enumerated << " subsets enumerated, optimum "
              << FormatNumber(exact.best_fitness) << '\n';
    return exact.feasible ? kExitOk : kExitInfeasible;
  }
  if (tier == "micro") {
    const MicroContext ctx = LoadMicroContext(o, config);
    const auto cap = ResolveCap(o, config);
    if (!cap) throw ConfigError("micro oracle needs --cap, --calibration or workload_cap");
    const MicroProblem problem = MicroProblemOf(ctx, config).WithWorkloadCap(cap);
    const ExactMicroResult exact = ExactParetoMicro(problem);
    ParetoArchive archive;
    archive.members = exact.front;
    WriteArchiveCsv(out / "oracle_micro.csv", ArchiveRows(archive, ctx.candidates));
    std::cout << exact.enumerated << " subsets enumerated, " << exact.front.size()
              << " Pareto points\n";
    return exact.front.empty() ? kExitInfeasible : kExitOk;
  }
  throw ValidationError("--tier must be macro or micro");
}

int Synth(const GlobalOptions& g, std::optional<std::size_t> communities,
          std::optional<std::size_t> existing) {
  SynthParams p = g.tiny ? SynthParams::Tiny(g.seed.value_or(1)) : SynthParams{};
  if (g.seed) p.seed = *g.seed;
  if (communities) p.communities = *communities;
  if (existing) p.existing_stations = *existing;
  SaveInstance(GenerateSynthetic(p), OutDir(g) / "instance.json");
  return kExitOk;
}

int Pipeline(const GlobalOptions& g, const std::string& instance_path) {
  const RunConfig config = ResolveConfig(g);
  const PipelineResult result = RunPipeline(LoadInstance(instance_path), config, g.out);
  std::cout << "stages:";
  for (const std::string& s : result.stages) std::cout << ' ' << s;
  std::cout << (result.feasible ? "\n" : "\ninfeasible result\n");
  return result.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical macro/micro fire station siting"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "run configuration JSON (or a manifest)");
  app.add_option("--seed", g.seed, "base seed, overrides the config");
  app.add_option("--out", g.out, "output directory");
  app.add_flag("--tiny", g.tiny,
               "oracle-sized synthetic instance; sizes by its region area");

  InstanceOptions o;
  std::string input;
  std::string tier;
  bool flag = false;
  std::optional<std::size_t> communities;
  std::optional<std::size_t> existing;
  int code = kExitOk;

  auto* risk = app.add_subcommand("risk", "score communities from accidents and density");
  risk->add_option("--input", input, "CSV with id,accidents,density")->required();
  risk->callback([&] { code = Risk(g, input); });

  auto* size = app.add_subcommand("size", "print radii, station count and distance bounds");
  size->callback([&] { code = Size(g); });

  auto* cand = app.add_subcommand("candidates", "candidate sites from a road network");
  cand->add_option("--network", input, "road network JSON")->required();
  cand->add_flag("--junctions-only", flag, "skip interior road points");
  cand->callback([&] { code = Candidates(g, input, flag); });

  auto* macro = app.add_subcommand("solve-macro", "site macro stations");
  AddInstanceOptions(macro, o, false);
  macro->callback([&] { code = SolveMacroCommand(g, o); });

  auto* calib = app.add_subcommand("calibrate", "calibrate the micro workload cap");
  AddInstanceOptions(calib, o, true);
  calib->callback([&] { code = Calibrate(g, o); });

  auto* micro = app.add_subcommand("solve-micro", "site micro stations");
  AddInstanceOptions(micro, o, true);
  micro->add_option("--calibration", o.calibration, "calibration.json");
  micro->add_option("--cap", o.cap, "workload cap S");
  micro->add_flag("--geojson", flag, "also write micro_plans.geojson");
  micro->callback([&] { code = SolveMicroCommand(g, o, flag); });

  auto* metrics = app.add_subcommand("metrics", "HV and spacing per generation");
  metrics->add_option("--history", input, "micro_history.csv")->required();
  metrics->add_flag("--normalize", flag, "min-max normalize objectives");
  metrics->callback([&] { code = Metrics(g, input, flag); });

  auto* select = app.add_subcommand("select", "representative plans A-D");
  AddInstanceOptions(select, o, true);
  select->add_option("--archive", input, "micro_archive.csv")->required();
  select->callback([&] { code = Select(g, o, input); });

  auto* oracle = app.add_subcommand("oracle", "exact enumeration for small instances");
  AddInstanceOptions(oracle, o, true);
  oracle->add_option("--tier", tier, "macro or micro")
      ->required()
      ->check(CLI::IsMember({"macro", "micro"}));
  oracle->add_option("--calibration", o.calibration, "calibration.json");
  oracle->add_option("--cap", o.cap, "workload cap S");
  oracle->callback([&] { code = Oracle(g, o, tier); });

  auto* synth = app.add_subcommand("synth", "generate a synthetic instance");
  synth->add_option("--communities", communities, "number of communities");
  synth->add_option("--existing", existing, "number of existing stations");
  synth->callback([&] { code = Synth(g, communities, existing); });

  auto* pipeline = app.add_subcommand("pipeline", "run every stage end to end");
  pipeline->add_option("--instance", input, "instance JSON")->required();
  pipeline->callback([&] { code = Pipeline(g, input); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex);
    return rc == 0 ? kExitOk : kExitValidation;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return ex.exit_code();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
  return code;
}

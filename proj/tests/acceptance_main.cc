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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "firesite/error.h"
#include "firesite/instance.h"
#include "firesite/io.h"
#include "firesite/metrics.h"
#include "firesite/oracle.h"
#include "firesite/pipeline.h"
#include "firesite/random.h"
#include "firesite/sizing.h"
#include "test_support.h"

namespace firesite {
namespace {

namespace fs = std::filesystem;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const fs::path kDemoInstance = fs::path(FIRESITE_DATA_DIR) / "demo_instance.json";
const fs::path kDemoConfig = fs::path(FIRESITE_DATA_DIR) / "demo_config.json";

// Two demo pipeline runs shared by the demo-based criteria.
struct DemoRuns {
  testing::TempDir dir;
  fs::path first;
  fs::path second;
  int first_code = -1;
  int second_code = -1;
  double seconds = 0.0;

  DemoRuns() : first(dir.path() / "first"), second(dir.path() / "second") {
    const auto start = std::chrono::steady_clock::now();
    first_code = testing::RunCli({"pipeline", "--instance", kDemoInstance.string(),
                                  "--config", kDemoConfig.string(), "--out",
                                  first.string()});
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    second_code = testing::RunCli({"pipeline", "--instance", kDemoInstance.string(),
                                   "--config", kDemoConfig.string(), "--out",
                                   second.string()});
  }
};

DemoRuns& Demo() {
  static DemoRuns runs;
  return runs;
}

Outcome AnalyticConstants() {
  const double r1 = MacroRadius(7, 4, 0.7);
  const double area = CircularServiceArea(1.746);
  const std::size_t n = StationCountByArea(58.995, 4, 9.58);
  const MicroBounds micro = ComputeMicroBounds(1.746, 1.0, 0.05);
  const MacroBounds macro = ComputeMacroBounds(1.746, 0.05, 0.3);
  const bool pass = std::abs(r1 - 1.746) <= 0.0005 && std::abs(area - 9.58) <= 0.01 &&
                    n == 3 && std::abs(micro.min_distance - 0.696) <= 1e-12 &&
                    std::abs(micro.max_distance - 2.796) <= 1e-12 &&
                    std::abs(macro.max_separation - 3.542) <= 1e-12;
  return {pass, Fmt("R1=%.6f area=%.4f N=%zu micro=(%.12g, %.12g) d_h=%.12g", r1, area, n,
                    micro.min_distance, micro.max_distance, macro.max_separation)};
}

Outcome MacroOracleEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  int optimal = 0;
  double worst = 1.0;
  bool guards = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const testing::TinyCase tiny(seed);
    const MacroProblem p = tiny.Macro(tiny.sizing.new_stations);
    guards &= p.candidate_count() <= 15 && p.new_stations() <= 3;
    const ExactMacroResult exact = BruteForceMacro(p);
    EAParams params;
    params.population = 100;
    params.generations = 300;
    params.seed = seed;
    const MacroSolution ga = SolveMacro(p, params);
    if (!exact.feasible) {
      if (!ga.plan.feasible) ++optimal;
      continue;
    }
    const double got = ga.plan.feasible ? ga.plan.total_covered_demand : 0.0;
    if (got == exact.best_fitness) {
      ++optimal;
    } else {
      worst = std::min(worst, got / exact.best_fitness);
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {guards && optimal >= 18 && worst >= 0.98 && seconds < 120.0,
          Fmt("%d/20 optimal, worst ratio %.4f, %.1f s", optimal, worst, seconds)};
}

Outcome MicroOracleEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  int instances = 0;
  int false_points = 0;
  std::size_t exact_points = 0;
  std::size_t found_points = 0;
  double worst_share = 1.0;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t seed = 1; instances < 10 && seed <= 100; ++seed) {
    const testing::TinyCase tiny(seed);
    const MicroProblem open = tiny.PlannedMicro(std::nullopt);
    const double cap = testing::TightestFeasibleCap(open);
    if (!std::isfinite(cap) || open.candidate_count() > 12) continue;
    const MicroProblem p = open.WithWorkloadCap(cap);
    const ExactMicroResult exact = ExactParetoMicro(p);
    if (exact.front.empty()) continue;
    ++instances;
    seeds.push_back(seed);
    EAParams params = tiny.config.micro_ea;
    params.seed = seed;
    const Nsga2Result r = SolveMicro(p, params);
    std::vector<std::vector<double>> truth;
    for (const auto& m : exact.front) truth.push_back(m.objectives);
    std::size_t hits = 0;
    for (const auto& m : r.final_archive.members) {
      if (!r.final_archive.feasible ||
          std::find(truth.begin(), truth.end(), m.objectives) == truth.end()) {
        ++false_points;
      } else {
        ++hits;
      }
    }
    exact_points += truth.size();
    found_points += hits;
    worst_share = std::min(worst_share, static_cast<double>(hits) / truth.size());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string used;
  for (std::uint64_t s : seeds) used += (used.empty() ? "" : ",") + std::to_string(s);
  return {instances == 10 && false_points == 0 && worst_share >= 0.9 && seconds < 300.0,
          Fmt("%d instances (seeds %s), %d false points, %zu/%zu exact points found, "
              "worst coverage %.3f, %.1f s",
              instances, used.c_str(), false_points, found_points, exact_points, worst_share,
              seconds)};
}

Outcome IndicatorCorrectness() {
  Random rng(2024);
  double worst_2d = 0.0;
  const std::vector<double> unit = {1.0, 1.0};
  worst_2d = std::abs(Hypervolume(Front{{0, 0.5}, {0.5, 0}}, unit) - 0.75);
  for (int t = 0; t < 1000; ++t) {
    const Front f = {{rng.Uniform01(), rng.Uniform01()}, {rng.Uniform01(), rng.Uniform01()}};
    const double box0 = (1 - f[0][0]) * (1 - f[0][1]);
    const double box1 = (1 - f[1][0]) * (1 - f[1][1]);
    const double both =
        (1 - std::max(f[0][0], f[1][0])) * (1 - std::max(f[0][1], f[1][1]));
    worst_2d = std::max(worst_2d, std::abs(Hypervolume(f, unit) - (box0 + box1 - both)));
  }

  std::mt19937_64 sampler(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> ref = {1.0, 1.0, 1.0};
  constexpr int kSamples = 1'000'000;
  double worst_z = 0.0;
  for (int t = 0; t < 10; ++t) {
    Front f(1 + rng.Below(8), std::vector<double>(3));
    for (auto& p : f) {
      for (double& v : p) v = rng.Uniform01();
    }
    int hits = 0;
    for (int s = 0; s < kSamples; ++s) {
      const double x = u(sampler), y = u(sampler), z = u(sampler);
      for (const auto& p : f) {
        if (p[0] <= x && p[1] <= y && p[2] <= z) {
          ++hits;
          break;
        }
      }
    }
    const double share = static_cast<double>(hits) / kSamples;
    const double se = std::sqrt(share * (1 - share) / kSamples);
    worst_z = std::max(worst_z, std::abs(Hypervolume(f, ref) - share) / se);
  }
  const double spacing = *Spacing(Front{{0}, {1}, {3}});
  const double spacing_err = std::abs(spacing - std::sqrt(1.0 / 3.0));
  return {worst_2d <= 1e-12 && worst_z <= 3.0 && spacing_err <= 1e-9,
          Fmt("2-D max error %.2g, 3-D max |z| %.2f over 10 fronts, spacing error %.2g",
              worst_2d, worst_z, spacing_err)};
}

Outcome ConvergenceShape() {
  DemoRuns& demo = Demo();
  if (demo.first_code != kExitOk) return {false, Fmt("demo pipeline exit %d", demo.first_code)};
  const CsvTable trace = ReadCsv(demo.first / "macro_trace.csv");
  const std::size_t col = trace.Column("best_fitness");
  std::vector<double> fitness;
  for (const auto& row : trace.rows) fitness.push_back(ParseNumber(row[col]));
  bool monotone = true;
  for (std::size_t g = 1; g < fitness.size(); ++g) monotone &= fitness[g] >= fitness[g - 1];
  const std::size_t tail = fitness.size() - fitness.size() / 10;
  bool flat = true;
  for (std::size_t g = tail; g < fitness.size(); ++g) flat &= fitness[g] == fitness.back();

  const CsvTable metrics = ReadCsv(demo.first / "metrics.csv");
  const std::size_t hv_col = metrics.Column("hv_fixed");
  std::vector<double> hv;
  for (const auto& row : metrics.rows) hv.push_back(ParseNumber(row[hv_col]));
  bool hv_monotone = !hv.empty();
  for (std::size_t g = 1; g < hv.size(); ++g) hv_monotone &= hv[g] >= hv[g - 1];
  const double hv_max = hv.empty() ? 0.0 : *std::max_element(hv.begin(), hv.end());
  const bool hv_final = !hv.empty() && hv.back() >= 0.99 * hv_max;
  std::size_t plateau = 0;
  for (std::size_t g = 0; g < fitness.size(); ++g) {
    if (fitness[g] == fitness.back()) {
      plateau = g;
      break;
    }
  }
  return {monotone && flat && hv_monotone && hv_final,
          Fmt("GA trace %zu gens, final fitness %g reached at gen %zu, HV %zu gens, "
              "final %.6g of max %.6g",
              fitness.size() - 1, fitness.back(), plateau, hv.size(),
              hv.empty() ? 0.0 : hv.back(), hv_max)};
}

// Independent recomputation of the macro constraints and objective.
bool MacroIndependentlyFeasible(const MacroProblemSpec& s, const std::vector<std::size_t>& sel) {
  if (sel.size() != s.new_stations) return false;
  for (std::size_t j : sel) {
    double nearest = kInf;
    for (std::size_t k : sel) {
      if (k != j) nearest = std::min(nearest, EuclideanDistance(s.candidates[j], s.candidates[k]));
    }
    for (const Point& e : s.existing) nearest = std::min(nearest, EuclideanDistance(s.candidates[j], e));
    if (!std::isfinite(nearest)) continue;
    if (nearest < s.min_separation || nearest > s.max_separation) return false;
  }
  return true;
}

double MacroIndependentFitness(const MacroProblemSpec& s, const std::vector<std::size_t>& sel) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.demand_points.size(); ++i) {
    bool covered = false;
    for (std::size_t j : sel) covered |= EuclideanDistance(s.demand_points[i], s.candidates[j]) <= s.radius;
    for (const Point& e : s.existing) covered |= EuclideanDistance(s.demand_points[i], e) <= s.radius;
    if (covered) total += s.demand[i];
  }
  return total;
}

bool MicroIndependentlyFeasible(const MicroProblemSpec& s, const std::vector<std::size_t>& sel) {
  for (const Point& d : s.demand_points) {
    bool covered = false;
    for (std::size_t j : sel) covered |= EuclideanDistance(d, s.candidates[j]) <= s.radius;
    if (!covered) return false;
  }
  for (std::size_t j : sel) {
    double load = 0.0;
    for (std::size_t i = 0; i < s.demand_points.size(); ++i) {
      if (EuclideanDistance(s.demand_points[i], s.candidates[j]) <= s.radius) load += s.demand[i];
    }
    if (s.workload_cap && load > *s.workload_cap) return false;
    bool anchored = s.anchors.empty();
    for (const Point& a : s.anchors) {
      const double d = EuclideanDistance(s.candidates[j], a);
      anchored |= d >= s.min_anchor_distance && d <= s.max_anchor_distance;
    }
    if (!anchored) return false;
  }
  return true;
}

std::vector<double> MicroIndependentObjectives(const MicroProblemSpec& s,
                                               const std::vector<std::size_t>& sel) {
  double f2 = 0.0;
  for (std::size_t i = 0; i < s.demand_points.size(); ++i) {
    double best = kInf;
    for (std::size_t j : sel) {
      const double d = EuclideanDistance(s.demand_points[i], s.candidates[j]);
      if (d <= s.radius) best = std::min(best, d);
    }
    if (std::isfinite(best)) f2 += s.demand[i] * best;
  }
  double spread = 0.0;
  if (sel.size() >= 2) {
    for (std::size_t j : sel) {
      double nearest = kInf;
      for (std::size_t k : sel) {
        if (k != j) nearest = std::min(nearest, EuclideanDistance(s.candidates[j], s.candidates[k]));
      }
      spread += nearest;
    }
    spread = -spread / static_cast<double>(sel.size());
  }
  return {static_cast<double>(sel.size()), f2, spread};
}

Outcome ConstraintFuzz() {
  DemoRuns& demo = Demo();
  if (demo.first_code != kExitOk) return {false, Fmt("demo pipeline exit %d", demo.first_code)};
  const InstanceFile instance = LoadInstance(kDemoInstance);
  const RunConfig config = LoadConfig(kDemoConfig);
  const DemandData demand = ComputeDemand(instance, config);
  const SizingReport sizing = SizingFor(instance, config);
  const MacroProblem macro = BuildMacroProblem(instance, config, demand, sizing,
                                               MacroCandidates(instance, config, sizing));
  const MacroPlanFile plan = ReadMacroPlan(demo.first / "macro_plan.json");
  const PointSet micro_candidates =
      PointSetFromJson(ReadJsonFile(demo.first / "micro_candidates.json"));
  const MicroProblem micro =
      BuildMicroProblem(instance, config, demand, sizing, micro_candidates, plan.Anchors())
          .WithWorkloadCap(ReadCalibrationCap(demo.first / "calibration.json"));

  Random rng(99);
  int mismatches = 0;
  int macro_feasible = 0;
  int micro_feasible = 0;
  for (int t = 0; t < 1000; ++t) {
    const double density = rng.Uniform01();
    Chromosome genes(macro.candidate_count());
    for (auto& g : genes) g = rng.Bernoulli(density) ? 1 : 0;
    if (t % 2 == 0) RepairCardinality(genes, macro.new_stations(), rng);
    const auto sel = SelectedIndices(genes);
    const double violation = macro.Violation(sel);
    const bool labeled = violation <= 0.0;
    const bool independent = MacroIndependentlyFeasible(macro.spec(), sel);
    if (labeled != independent) ++mismatches;
    if (labeled) {
      ++macro_feasible;
      if (std::abs(macro.Fitness(sel) - MacroIndependentFitness(macro.spec(), sel)) > 1e-9) ++mismatches;
    } else if (!(violation > 0.0)) {
      ++mismatches;
    }
  }
  // Half the micro trials perturb a solver plan by one or two bit flips.
  std::vector<std::vector<std::size_t>> archive_plans;
  for (const ArchiveRow& row : ReadArchiveCsv(demo.first / "micro_archive.csv")) {
    archive_plans.push_back(IndicesOfIds(micro_candidates, row.sites));
  }
  for (int t = 0; t < 1000; ++t) {
    Chromosome genes(micro.candidate_count());
    if (t % 2 == 1 && !archive_plans.empty()) {
      for (std::size_t j : archive_plans[rng.Below(archive_plans.size())]) genes[j] = 1;
      for (std::size_t f = rng.Below(3); f > 0; --f) {
        auto& g = genes[rng.Below(genes.size())];
        g = 1 - g;
      }
    } else {
      const double density = rng.Uniform01();
      for (auto& g : genes) g = rng.Bernoulli(density) ? 1 : 0;
    }
    const auto sel = SelectedIndices(genes);
    const double violation = micro.Violation(sel);
    const bool labeled = violation <= 0.0;
    if (labeled != MicroIndependentlyFeasible(micro.spec(), sel)) ++mismatches;
    if (labeled) ++micro_feasible;
    if (!labeled && !(violation > 0.0)) ++mismatches;
    const auto obj = micro.Objectives(sel).AsVector();
    const auto check = MicroIndependentObjectives(micro.spec(), sel);
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::abs(obj[k] - check[k]) > 1e-9) ++mismatches;
    }
  }
  // Plans the solvers labeled feasible.
  int solver_plans = 0;
  if (plan.feasible) {
    ++solver_plans;
    if (!MacroIndependentlyFeasible(macro.spec(),
                                    IndicesOfIds(macro.spec().candidates,
                                                 [&] {
                                                   std::vector<std::string> ids;
                                                   for (const Point& p : plan.selected) ids.push_back(p.id);
                                                   return ids;
                                                 }()))) {
      ++mismatches;
    }
  }
  for (const ArchiveRow& row : ReadArchiveCsv(demo.first / "micro_archive.csv")) {
    if (!row.feasible) continue;
    ++solver_plans;
    const auto sel = IndicesOfIds(micro_candidates, row.sites);
    if (!MicroIndependentlyFeasible(micro.spec(), sel)) ++mismatches;
  }
  return {mismatches == 0,
          Fmt("%d mismatches; random macro feasible %d/1000, random micro feasible %d/1000, "
              "%d solver plans rechecked",
              mismatches, macro_feasible, micro_feasible, solver_plans)};
}

Outcome CalibrationRecompute() {
  DemoRuns& demo = Demo();
  if (demo.first_code != kExitOk) return {false, Fmt("demo pipeline exit %d", demo.first_code)};
  const fs::path& run = demo.first;
  const InstanceFile instance = LoadInstance(run / "instance.json");
  const CsvTable risk = ReadCsv(run / "risk.csv");
  std::map<std::string, double> a;
  for (const auto& row : risk.rows) a[row[risk.Column("id")]] = ParseNumber(row[risk.Column("a")]);
  const double radius = ReadJsonFile(run / "sizing.json").at("micro_radius").get<double>();
  const PointSet candidates = PointSetFromJson(ReadJsonFile(run / "micro_candidates.json"));
  std::map<std::string, Point> by_id;
  for (const Point& p : candidates) by_id[p.id] = p;

  const CsvTable runs = ReadCsv(run / "calibration.csv");
  double sum = 0.0;
  std::size_t included = 0;
  for (const auto& row : runs.rows) {
    const std::string r = row[runs.Column("run")];
    double best = 0.0;
    for (const ArchiveRow& sol : ReadArchiveCsv(run / ("calibration_run_" + r + ".csv"))) {
      double total = 0.0;
      for (const std::string& id : sol.sites) {
        double load = 0.0;
        for (const DemandRecord& d : instance.demand_points) {
          if (EuclideanDistance(Point{d.id, d.x, d.y}, by_id.at(id)) <= radius) load += a.at(d.id);
        }
        total += load;
      }
      best = std::max(best, total / static_cast<double>(sol.sites.size()));
    }
    sum += best;
    ++included;
  }
  const double recomputed = sum / static_cast<double>(included);
  const double reported = ReadCalibrationCap(run / "calibration.json");
  const double diff = std::abs(recomputed - reported);
  return {included > 0 && diff <= 4 * std::numeric_limits<double>::epsilon() * reported,
          Fmt("S = %.15g from calibration.json, %.15g recomputed over %zu runs, |diff| = %.3g",
              reported, recomputed, included, diff)};
}

Outcome Determinism() {
  DemoRuns& demo = Demo();
  if (demo.first_code != kExitOk || demo.second_code != kExitOk) {
    return {false, Fmt("demo pipeline exits %d / %d", demo.first_code, demo.second_code)};
  }
  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::directory_iterator(demo.first)) {
    const std::string ext = entry.path().extension().string();
    if (ext != ".csv" && ext != ".json" && ext != ".geojson") continue;
    ++compared;
    const fs::path other = demo.second / entry.path().filename();
    if (!fs::exists(other) ||
        testing::ReadFile(entry.path()) != testing::ReadFile(other)) {
      differing.push_back(entry.path().filename().string());
    }
  }
  std::size_t second_count = 0;
  for (const auto& entry : fs::directory_iterator(demo.second)) {
    (void)entry;
    ++second_count;
  }
  std::string names;
  for (const auto& n : differing) names += " " + n;
  return {differing.empty() && compared > 0 && second_count == compared,
          Fmt("%zu files compared, %zu differ%s; first run %.1f s", compared, differing.size(),
              names.c_str(), demo.seconds)};
}

}  // namespace
}  // namespace firesite

int main() {
  using firesite::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"analytic constants", firesite::AnalyticConstants},
      {"macro oracle equivalence", firesite::MacroOracleEquivalence},
      {"micro oracle equivalence", firesite::MicroOracleEquivalence},
      {"indicator correctness", firesite::IndicatorCorrectness},
      {"convergence shape", firesite::ConvergenceShape},
      {"constraint integrity fuzz", firesite::ConstraintFuzz},
      {"calibration recomputation", firesite::CalibrationRecompute},
      {"determinism", firesite::Determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

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

#include "firesite/macro_model.h"

#include <algorithm>
#include <cmath>

#include "firesite/error.h"

namespace firesite {
namespace {

double BandExcess(double d, double lo, double hi) {
  if (d < lo) return lo - d;
  if (d > hi) return d - hi;
  return 0.0;
}

}  // namespace

AdjacencyMode ParseAdjacencyMode(std::string_view name) {
  if (name == "nearest") return AdjacencyMode::kNearest;
  if (name == "all-pairs") return AdjacencyMode::kAllPairs;
  throw ConfigError("unknown adjacency mode '" + std::string(name) + "'");
}

std::string_view AdjacencyModeName(AdjacencyMode mode) {
  return mode == AdjacencyMode::kAllPairs ? "all-pairs" : "nearest";
}

MacroProblem::MacroProblem(MacroProblemSpec spec) : spec_(std::move(spec)) {
  ValidatePointSet(spec_.demand_points, "demand points");
  ValidatePointSet(spec_.candidates, "macro candidates");
  ValidatePointSet(spec_.existing, "existing stations");
  if (spec_.demand.size() != spec_.demand_points.size()) {
    throw ValidationError("macro problem: demand values do not match points");
  }
  if (spec_.new_stations < 1) {
    throw ConfigError("macro problem: at least one new station is required");
  }
  if (spec_.new_stations > spec_.candidates.size()) {
    throw ConfigError("macro problem: N exceeds the candidate count");
  }
  if (spec_.min_separation > spec_.max_separation) {
    throw ConfigError("macro problem: d_s1 exceeds d_h");
  }

  const DistanceIndex to_candidates = ComputeDistanceIndex(
      spec_.demand_points, spec_.candidates, spec_.metric, spec_.network);
  coverage_ = ComputeCoverageSets(to_candidates, spec_.radius);

  covered_by_existing_.assign(spec_.demand_points.size(), 0);
  if (!spec_.existing.empty()) {
    const DistanceIndex to_existing = ComputeDistanceIndex(
        spec_.demand_points, spec_.existing, spec_.metric, spec_.network);
    for (std::size_t i = 0; i < to_existing.rows(); ++i) {
      for (std::size_t e = 0; e < to_existing.cols(); ++e) {
        if (to_existing(i, e) <= spec_.radius) covered_by_existing_[i] = 1;
      }
    }
  }

  PointSet stations = spec_.candidates;
  stations.insert(stations.end(), spec_.existing.begin(), spec_.existing.end());
  stations_ = ComputeDistanceIndex(stations, stations, spec_.metric,
                                   spec_.network);
  for (double a : spec_.demand) total_demand_ += a;
}

std::vector<std::size_t> MacroProblem::CoveredDemand(
    std::span<const std::size_t> selected) const {
  std::vector<char> covered = covered_by_existing_;
  for (std::size_t j : selected) {
    for (std::size_t i : coverage_.demands_of_site[j]) covered[i] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (covered[i]) out.push_back(i);
  }
  return out;
}

double MacroProblem::Fitness(std::span<const std::size_t> selected) const {
  double total = 0.0;
  for (std::size_t i : CoveredDemand(selected)) total += spec_.demand[i];
  return total;
}

double MacroProblem::Violation(std::span<const std::size_t> selected) const {
  const double count = static_cast<double>(selected.size());
  double violation =
      std::abs(count - static_cast<double>(spec_.new_stations)) *
      (total_demand_ + 1.0);

  std::vector<std::size_t> sited(selected.begin(), selected.end());
  const std::size_t first_existing = spec_.candidates.size();
  for (std::size_t e = 0; e < spec_.existing.size(); ++e) {
    sited.push_back(first_existing + e);
  }

  if (spec_.adjacency == AdjacencyMode::kNearest) {
    for (std::size_t j : selected) {
      if (sited.size() < 2) break;
      const Neighbor n = NearestStation(j, sited, stations_);
      violation += BandExcess(n.distance, spec_.min_separation,
                              spec_.max_separation);
    }
    return violation;
  }

  for (std::size_t a = 0; a < selected.size(); ++a) {
    for (std::size_t b = 0; b < sited.size(); ++b) {
      // New-new pairs once, new-existing pairs always.
      if (b < selected.size() && b <= a) continue;
      violation += BandExcess(stations_(selected[a], sited[b]),
                              spec_.min_separation, spec_.max_separation);
    }
  }
  return violation;
}

void RepairCardinality(Chromosome& genes, std::size_t count, Random& rng) {
  if (count > genes.size()) {
    throw ConfigError("repair: requested cardinality exceeds chromosome length");
  }
  std::vector<std::size_t> ones;
  std::vector<std::size_t> zeros;
  for (std::size_t k = 0; k < genes.size(); ++k) {
    (genes[k] ? ones : zeros).push_back(k);
  }
  while (ones.size() > count) {
    const std::size_t pick = rng.Below(ones.size());
    genes[ones[pick]] = 0;
    ones.erase(ones.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  while (ones.size() < count) {
    const std::size_t pick = rng.Below(zeros.size());
    genes[zeros[pick]] = 1;
    ones.push_back(zeros[pick]);
    zeros.erase(zeros.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

MacroPlan MakeMacroPlan(const MacroProblem& problem,
                        std::span<const std::size_t> selected) {
  MacroPlan plan;
  plan.selected.assign(selected.begin(), selected.end());
  std::sort(plan.selected.begin(), plan.selected.end());
  for (std::size_t j : plan.selected) {
    plan.selected_ids.push_back(problem.spec().candidates[j].id);
  }
  plan.covered = problem.CoveredDemand(plan.selected);
  for (std::size_t i : plan.covered) {
    plan.total_covered_demand += problem.spec().demand[i];
  }
  plan.violation = problem.Violation(plan.selected);
  plan.feasible = plan.violation <= 0.0;
  return plan;
}

MacroSolution SolveMacro(const MacroProblem& problem, const EAParams& params) {
  const std::size_t n = problem.new_stations();
  SingleObjectiveProblem ga;
  ga.genes = problem.candidate_count();
  ga.evaluate = [&problem](const Chromosome& genes) {
    const auto selected = SelectedIndices(genes);
    return Evaluation{{problem.Fitness(selected)}, problem.Violation(selected)};
  };
  ga.repair = [n](Chromosome& genes, Random& rng) {
    RepairCardinality(genes, n, rng);
  };
  ga.initialize = [&problem](Random&) {
    return Chromosome(problem.candidate_count(), 0);
  };

  GaResult run = RunElitistGa(ga, params);
  MacroSolution solution;
  solution.plan = MakeMacroPlan(problem, SelectedIndices(run.best.genes));
  solution.trace = std::move(run.trace);
  solution.trace_violation = std::move(run.trace_violation);
  return solution;
}

}  // namespace firesite

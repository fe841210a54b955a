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

#include "firesite/micro_model.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "firesite/error.h"

namespace firesite {

MicroProblem::MicroProblem(MicroProblemSpec spec) : spec_(std::move(spec)) {
  ValidatePointSet(spec_.demand_points, "demand points");
  ValidatePointSet(spec_.candidates, "micro candidates");
  ValidatePointSet(spec_.anchors, "macro anchors");
  if (spec_.demand.size() != spec_.demand_points.size()) {
    throw ValidationError("micro problem: demand values do not match points");
  }
  if (spec_.workload_cap && !(*spec_.workload_cap >= 0.0)) {
    throw ConfigError("micro problem: workload cap must be non-negative");
  }
  to_candidates_ = ComputeDistanceIndex(spec_.demand_points, spec_.candidates,
                                        spec_.metric, spec_.network);
  between_candidates_ = ComputeDistanceIndex(
      spec_.candidates, spec_.candidates, spec_.metric, spec_.network);
  to_anchors_ = ComputeDistanceIndex(spec_.candidates, spec_.anchors,
                                     spec_.metric, spec_.network);
  coverage_ = ComputeCoverageSets(to_candidates_, spec_.radius);
  workload_.assign(spec_.candidates.size(), 0.0);
  for (std::size_t j = 0; j < spec_.candidates.size(); ++j) {
    for (std::size_t i : coverage_.demands_of_site[j]) {
      workload_[j] += spec_.demand[i];
    }
  }
}

MicroProblem MicroProblem::WithWorkloadCap(std::optional<double> cap) const {
  MicroProblem copy = *this;
  if (cap && !(*cap >= 0.0)) {
    throw ConfigError("micro problem: workload cap must be non-negative");
  }
  copy.spec_.workload_cap = cap;
  return copy;
}

MicroObjectives MicroProblem::Objectives(
    std::span<const std::size_t> selected) const {
  MicroObjectives out;
  out.station_count = static_cast<double>(selected.size());
  if (selected.empty()) return out;

  std::vector<char> chosen(spec_.candidates.size(), 0);
  for (std::size_t j : selected) chosen[j] = 1;
  for (std::size_t i = 0; i < spec_.demand_points.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j : coverage_.sites_of_demand[i]) {
      if (chosen[j]) nearest = std::min(nearest, to_candidates_(i, j));
    }
    if (std::isfinite(nearest)) out.weighted_distance += spec_.demand[i] * nearest;
  }

  if (selected.size() >= 2) {
    double sum = 0.0;
    for (std::size_t j : selected) {
      sum += NearestStation(j, selected, between_candidates_).distance;
    }
    out.negated_mean_spacing = -sum / static_cast<double>(selected.size());
  }
  return out;
}

double MicroProblem::Violation(std::span<const std::size_t> selected) const {
  std::vector<char> chosen(spec_.candidates.size(), 0);
  for (std::size_t j : selected) chosen[j] = 1;

  double violation = 0.0;
  for (std::size_t i = 0; i < spec_.demand_points.size(); ++i) {
    const auto& sites = coverage_.sites_of_demand[i];
    const bool covered = std::any_of(sites.begin(), sites.end(),
                                     [&](std::size_t j) { return chosen[j]; });
    if (!covered) violation += 1.0;
  }

  if (spec_.workload_cap) {
    for (std::size_t j : selected) {
      violation += std::max(0.0, workload_[j] - *spec_.workload_cap);
    }
  }

  // Anchor band; zero for ring-filtered candidates.
  for (std::size_t j : selected) {
    double closest_gap = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < to_anchors_.cols(); ++c) {
      const double d = to_anchors_(j, c);
      double gap = 0.0;
      if (d < spec_.min_anchor_distance) gap = spec_.min_anchor_distance - d;
      if (d > spec_.max_anchor_distance) gap = d - spec_.max_anchor_distance;
      closest_gap = std::min(closest_gap, gap);
    }
    if (to_anchors_.cols() > 0 && closest_gap > 0.0) violation += closest_gap;
  }
  return violation;
}

double MicroProblem::MeanWorkload(std::span<const std::size_t> selected) const {
  if (selected.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t j : selected) sum += workload_[j];
  return sum / static_cast<double>(selected.size());
}

MultiObjectiveProblem MakeMicroMoea(const MicroProblem& problem) {
  MultiObjectiveProblem moea;
  moea.genes = problem.candidate_count();
  moea.objectives = 3;
  moea.evaluate = [&problem](const Chromosome& genes) {
    const auto selected = SelectedIndices(genes);
    return Evaluation{problem.Objectives(selected).AsVector(),
                      problem.Violation(selected)};
  };
  return moea;
}

double WorkloadCap(std::span<const std::vector<double>> solution_workloads,
                   std::vector<double>* run_maxima) {
  if (solution_workloads.empty()) {
    throw CalibrationError("no calibration run produced a feasible front");
  }
  double sum = 0.0;
  for (const auto& run : solution_workloads) {
    if (run.empty()) throw DomainError("calibration run without solutions");
    const double best = *std::max_element(run.begin(), run.end());
    if (run_maxima != nullptr) run_maxima->push_back(best);
    sum += best;
  }
  return sum / static_cast<double>(solution_workloads.size());
}

WorkloadCalibration CalibrateWorkload(const MicroProblem& problem,
                                      const EAParams& params,
                                      std::size_t runs) {
  if (runs < 1) throw ConfigError("calibration needs at least one run");
  const MicroProblem uncapped = problem.WithWorkloadCap(std::nullopt);
  const MultiObjectiveProblem moea = MakeMicroMoea(uncapped);

  std::vector<std::future<ParetoArchive>> pending;
  for (std::size_t r = 0; r < runs; ++r) {
    EAParams run_params = params;
    run_params.seed = params.seed + r;
    pending.push_back(std::async(std::launch::async, [&moea, run_params] {
      return RunNsga2(moea, run_params).final_archive;
    }));
  }

  WorkloadCalibration calibration;
  calibration.runs = runs;
  for (std::size_t r = 0; r < runs; ++r) {
    ParetoArchive front = pending[r].get();
    if (!front.feasible || front.members.empty()) {
      LogWarning("calibration run " + std::to_string(r) +
                 " produced no feasible front; excluded");
      continue;
    }
    std::vector<double> workloads;
    for (const auto& member : front.members) {
      workloads.push_back(uncapped.MeanWorkload(SelectedIndices(member.genes)));
    }
    calibration.solution_workloads.push_back(std::move(workloads));
    calibration.fronts.push_back(std::move(front));
    calibration.included_runs.push_back(r);
  }
  if (calibration.solution_workloads.empty()) {
    throw CalibrationError("no calibration run produced a feasible front");
  }
  calibration.cap =
      WorkloadCap(calibration.solution_workloads, &calibration.run_maxima);
  return calibration;
}

Nsga2Result SolveMicro(const MicroProblem& problem, const EAParams& params) {
  if (!problem.spec().workload_cap) {
    throw ConfigError("solve-micro requires a workload cap");
  }
  Nsga2Result result = RunNsga2(MakeMicroMoea(problem), params);
  for (const auto& member : result.final_archive.members) {
    const auto selected = SelectedIndices(member.genes);
    const bool recheck = problem.Violation(selected) <= 0.0;
    if (recheck != member.feasible() ||
        problem.Objectives(selected).AsVector() != member.objectives) {
      throw Error("micro archive member failed re-verification");
    }
  }
  return result;
}

}  // namespace firesite

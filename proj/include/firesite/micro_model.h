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

#ifndef FIRESITE_MICRO_MODEL_H_
#define FIRESITE_MICRO_MODEL_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "firesite/evolutionary.h"
#include "firesite/geometry.h"

namespace firesite {

struct MicroProblemSpec {
  PointSet demand_points;
  std::vector<double> demand;  // a_i
  PointSet candidates;         // J2, already ring-filtered
  PointSet anchors;            // existing plus newly sited macro stations
  double radius = 1.0;         // R2
  double min_anchor_distance = 0.0;  // d_s2
  double max_anchor_distance = 0.0;  // d_l2
  std::optional<double> workload_cap;  // S; absent while calibrating
  Metric metric = Metric::kEuclidean;
  const RoadNetwork* network = nullptr;
};

// Objective triple, all minimized.
struct MicroObjectives {
  double station_count = 0.0;        // F1
  double weighted_distance = 0.0;    // F2
  double negated_mean_spacing = 0.0;  // F3

  std::vector<double> AsVector() const {
    return {station_count, weighted_distance, negated_mean_spacing};
  }
};

// Tri-objective micro-station model: covering, risk-weighted median distance
// and dispersion, under coverage, workload and macro-anchor constraints.
class MicroProblem {
 public:
  explicit MicroProblem(MicroProblemSpec spec);

  const MicroProblemSpec& spec() const { return spec_; }
  std::size_t candidate_count() const { return spec_.candidates.size(); }
  const CoverageSets& coverage() const { return coverage_; }

  // Copy of this problem with a different workload cap.
  MicroProblem WithWorkloadCap(std::optional<double> cap) const;

  // F2 assigns each covered demand to its nearest selected covering station;
  // F3 averages each selected station's distance to its nearest selected
  // neighbor and is 0 with fewer than two stations.
  MicroObjectives Objectives(std::span<const std::size_t> selected) const;

  // Uncovered demand count, plus workload excess over the cap per station,
  // plus distance outside [d_s2, d_l2] to the closest anchor for stations
  // with no anchor in the band.
  double Violation(std::span<const std::size_t> selected) const;

  // Total demand within R2 of candidate `site`.
  double Workload(std::size_t site) const { return workload_[site]; }
  // Mean of Workload over `selected`; 0 for an empty selection.
  double MeanWorkload(std::span<const std::size_t> selected) const;

  double DemandDistance(std::size_t demand, std::size_t site) const {
    return to_candidates_(demand, site);
  }

 private:
  MicroProblemSpec spec_;
  DistanceIndex to_candidates_;
  DistanceIndex between_candidates_;
  DistanceIndex to_anchors_;
  CoverageSets coverage_;
  std::vector<double> workload_;
};

MultiObjectiveProblem MakeMicroMoea(const MicroProblem& problem);

struct WorkloadCalibration {
  std::size_t runs = 0;
  std::vector<std::size_t> included_runs;  // run indices with a feasible front
  std::vector<ParetoArchive> fronts;        // parallel to included_runs
  // Mean station workload of each front solution.
  std::vector<std::vector<double>> solution_workloads;
  std::vector<double> run_maxima;
  double cap = 0.0;  // mean of run_maxima
};

// Mean over runs of each run's largest per-solution mean workload. Appends
// the per-run maxima to `run_maxima` when given.
double WorkloadCap(std::span<const std::vector<double>> solution_workloads,
                   std::vector<double>* run_maxima = nullptr);

// Runs the MOEA `runs` times without the workload cap (seeds seed + r) and
// averages each run's largest per-solution mean workload. Runs execute
// concurrently; each owns its random stream. Throws CalibrationError when no
// run yields a feasible front.
WorkloadCalibration CalibrateWorkload(const MicroProblem& problem,
                                      const EAParams& params, std::size_t runs);

// NSGA-II on the capped model. Archive members are re-verified by direct
// recomputation; the archive is flagged infeasible when nothing feasible was
// found.
Nsga2Result SolveMicro(const MicroProblem& problem, const EAParams& params);

}  // namespace firesite

#endif  // FIRESITE_MICRO_MODEL_H_

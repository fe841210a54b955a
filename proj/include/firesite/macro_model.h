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

#ifndef FIRESITE_MACRO_MODEL_H_
#define FIRESITE_MACRO_MODEL_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "firesite/evolutionary.h"
#include "firesite/geometry.h"
#include "firesite/random.h"

namespace firesite {

// Which station pairs the macro separation bounds apply to.
enum class AdjacencyMode {
  kNearest,   // each new station and its nearest sited neighbor
  kAllPairs,  // every new station against every other sited station
};

AdjacencyMode ParseAdjacencyMode(std::string_view name);
std::string_view AdjacencyModeName(AdjacencyMode mode);

struct MacroProblemSpec {
  PointSet demand_points;
  std::vector<double> demand;  // a_i, parallel to demand_points
  PointSet candidates;         // J1
  PointSet existing;           // Phi
  double radius = 0.0;         // R1
  double min_separation = 0.0;  // d_s1
  double max_separation = std::numeric_limits<double>::infinity();  // d_h
  std::size_t new_stations = 1;  // N
  AdjacencyMode adjacency = AdjacencyMode::kNearest;
  Metric metric = Metric::kEuclidean;
  const RoadNetwork* network = nullptr;
};

// Extended maximal covering problem for new macro stations alongside the
// existing ones. Immutable after construction; evaluation is thread-safe.
class MacroProblem {
 public:
  explicit MacroProblem(MacroProblemSpec spec);

  const MacroProblemSpec& spec() const { return spec_; }
  std::size_t candidate_count() const { return spec_.candidates.size(); }
  std::size_t new_stations() const { return spec_.new_stations; }
  const CoverageSets& coverage() const { return coverage_; }
  double total_demand() const { return total_demand_; }

  // Demand points covered by the existing stations or `selected` candidates.
  std::vector<std::size_t> CoveredDemand(
      std::span<const std::size_t> selected) const;

  // Total covered demand.
  double Fitness(std::span<const std::size_t> selected) const;

  // Cardinality mismatch scaled by (total demand + 1) plus every separation
  // excess outside [d_s1, d_h] on the adjacency relation in force.
  double Violation(std::span<const std::size_t> selected) const;

  // Distance between two stations: indices < candidate_count() are
  // candidates, the rest are existing stations.
  double StationDistance(std::size_t a, std::size_t b) const {
    return stations_(a, b);
  }

 private:
  MacroProblemSpec spec_;
  CoverageSets coverage_;
  std::vector<char> covered_by_existing_;
  DistanceIndex stations_;  // (J1 + Phi) x (J1 + Phi)
  double total_demand_ = 0.0;
};

// Adds or drops random bits until exactly `count` are set. Throws ConfigError
// when `count` exceeds the chromosome length.
void RepairCardinality(Chromosome& genes, std::size_t count, Random& rng);

struct MacroPlan {
  std::vector<std::size_t> selected;  // candidate indices, ascending
  std::vector<std::string> selected_ids;
  std::vector<std::size_t> covered;   // demand indices
  double total_covered_demand = 0.0;
  double violation = 0.0;
  bool feasible = false;
};

MacroPlan MakeMacroPlan(const MacroProblem& problem,
                        std::span<const std::size_t> selected);

struct MacroSolution {
  MacroPlan plan;
  std::vector<double> trace;            // elite fitness per generation
  std::vector<double> trace_violation;  // elite violation per generation
};

// Elitist GA over fixed-cardinality chromosomes (initialization and every
// offspring pass through RepairCardinality).
MacroSolution SolveMacro(const MacroProblem& problem, const EAParams& params);

}  // namespace firesite

#endif  // FIRESITE_MACRO_MODEL_H_

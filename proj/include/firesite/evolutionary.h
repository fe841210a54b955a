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

#ifndef FIRESITE_EVOLUTIONARY_H_
#define FIRESITE_EVOLUTIONARY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "firesite/random.h"

namespace firesite {

// Binary site-selection encoding; one byte per candidate, 1 = selected.
using Chromosome = std::vector<std::uint8_t>;

std::vector<std::size_t> SelectedIndices(const Chromosome& genes);
Chromosome ChromosomeFromIndices(std::size_t length,
                                 std::span<const std::size_t> selected);

struct EAParams {
  std::size_t population = 300;
  std::size_t generations = 500;
  double crossover_probability = 0.9;
  double mutation_probability = 0.005;  // per bit
  std::size_t elitism = 1;              // single-objective engine only
  std::uint64_t seed = 1;

  // Throws ConfigError on out-of-range values.
  void Validate() const;
};

struct Evaluation {
  std::vector<double> objectives;
  double violation = 0.0;  // sum of per-constraint excesses, 0 = feasible
};

struct EvaluatedIndividual {
  Chromosome genes;
  std::vector<double> objectives;
  double violation = 0.0;

  bool feasible() const { return violation <= 0.0; }
};

using Evaluator = std::function<Evaluation(const Chromosome&)>;
using RepairFn = std::function<void(Chromosome&, Random&)>;
using InitFn = std::function<Chromosome(Random&)>;

// Maximizes objectives[0] of `evaluate`. `repair` and `initialize` are
// optional; the default initializer draws each bit with probability 1/2.
struct SingleObjectiveProblem {
  std::size_t genes = 0;
  Evaluator evaluate;
  RepairFn repair;
  InitFn initialize;
};

struct GaResult {
  EvaluatedIndividual best;
  // Elite fitness after initialization (entry 0) and after each generation.
  std::vector<double> trace;
  std::vector<double> trace_violation;
  bool feasible = false;
};

// Generational GA with elitist reservation: the `elitism` best individuals
// pass unchanged into the next generation; the rest are produced by binary
// tournament, uniform crossover, bit-flip mutation, then repair.
//
// Random stream order per generation: for each offspring pair, tournament 1
// (two draws), tournament 2 (two draws), crossover coin, crossover mask (only
// if crossing), mutation coins for child 1 then child 2, repair of child 1
// then child 2.
GaResult RunElitistGa(const SingleObjectiveProblem& problem,
                      const EAParams& params);

// Pareto dominance under minimization.
bool Dominates(std::span<const double> a, std::span<const double> b);

// Feasible beats infeasible; among infeasible the smaller violation wins;
// among feasible, Pareto dominance decides.
bool ConstraintDominates(const EvaluatedIndividual& a,
                         const EvaluatedIndividual& b);

// Fronts of mutually non-dominated indices under `dominates(i, j)`; every
// index appears exactly once, front order is ascending index.
std::vector<std::vector<std::size_t>> FastNondominatedSort(
    std::size_t count,
    const std::function<bool(std::size_t, std::size_t)>& dominates);

// Pareto-dominance version over objective vectors (minimization).
std::vector<std::vector<std::size_t>> FastNondominatedSort(
    std::span<const std::vector<double>> points);

// NSGA-II crowding distance of each point within one front.
std::vector<double> CrowdingDistance(std::span<const std::vector<double>> front);

// Non-dominated set at one generation.
struct ParetoArchive {
  std::size_t generation = 0;
  std::vector<EvaluatedIndividual> members;
  // False when no feasible solution was found; members are then the least
  // violating individuals.
  bool feasible = true;
};

struct MultiObjectiveProblem {
  std::size_t genes = 0;
  std::size_t objectives = 0;
  Evaluator evaluate;
  RepairFn repair;
  // Default: each individual draws a density u ~ U(0,1) and sets each bit
  // with probability u, which spreads the initial population over set sizes.
  InitFn initialize;
};

struct Nsga2Result {
  ParetoArchive final_archive;
  // Elitist external archive after initialization and after each generation.
  std::vector<ParetoArchive> history;
  std::vector<EvaluatedIndividual> final_population;
};

// NSGA-II with constraint domination. Alongside the population an elitist
// external archive keeps every feasible, non-dominated objective vector seen
// so far (one representative per distinct vector, sorted lexicographically).
//
// Random stream order per generation: for each offspring pair, tournament 1,
// tournament 2, crossover coin, crossover mask, mutation coins of both
// children, repair of both children.
Nsga2Result RunNsga2(const MultiObjectiveProblem& problem,
                     const EAParams& params);

// Non-dominated filter with one representative per distinct objective vector,
// output sorted lexicographically by objectives. Used by the archive and the
// exact oracles.
std::vector<EvaluatedIndividual> NondominatedUnique(
    std::vector<EvaluatedIndividual> individuals);

}  // namespace firesite

#endif  // FIRESITE_EVOLUTIONARY_H_

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

#include "firesite/evolutionary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "firesite/error.h"

namespace firesite {
namespace {

EvaluatedIndividual Evaluate(const Evaluator& evaluate, Chromosome genes) {
  Evaluation e = evaluate(genes);
  if (!(e.violation >= 0.0)) {
    throw Error("evaluator returned a negative or NaN violation");
  }
  return {std::move(genes), std::move(e.objectives), e.violation};
}

Chromosome RandomBits(std::size_t length, double density, Random& rng) {
  Chromosome genes(length, 0);
  for (auto& g : genes) g = rng.Bernoulli(density) ? 1 : 0;
  return genes;
}

void UniformCrossover(Chromosome& a, Chromosome& b, Random& rng) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (rng.Bernoulli(0.5)) std::swap(a[k], b[k]);
  }
}

void Mutate(Chromosome& genes, double probability, Random& rng) {
  if (probability <= 0.0) return;
  for (auto& g : genes) {
    if (rng.Bernoulli(probability)) g ^= 1;
  }
}

// Total order for the single-objective engine: less violation first, then
// higher fitness.
bool Better(const EvaluatedIndividual& a, const EvaluatedIndividual& b) {
  if (a.violation != b.violation) return a.violation < b.violation;
  return a.objectives[0] > b.objectives[0];
}

// Offspring pair: copy parents, cross, mutate, repair.
std::pair<Chromosome, Chromosome> Breed(const Chromosome& p1,
                                        const Chromosome& p2,
                                        const EAParams& params,
                                        const RepairFn& repair, Random& rng) {
  Chromosome c1 = p1;
  Chromosome c2 = p2;
  if (rng.Bernoulli(params.crossover_probability)) UniformCrossover(c1, c2, rng);
  Mutate(c1, params.mutation_probability, rng);
  Mutate(c2, params.mutation_probability, rng);
  if (repair) {
    repair(c1, rng);
    repair(c2, rng);
  }
  return {std::move(c1), std::move(c2)};
}

struct RankedPopulation {
  std::vector<EvaluatedIndividual> members;
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

std::vector<std::vector<double>> ObjectivesOf(
    const std::vector<EvaluatedIndividual>& pool,
    std::span<const std::size_t> indices) {
  std::vector<std::vector<double>> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(pool[i].objectives);
  return out;
}

// Environmental selection: fill fronts in order, truncate the last one by
// descending crowding distance (ties keep the lower index).
// Same contract as ConstraintDominates, both directions at once: 1 when a
// wins, -1 when b wins, 0 otherwise.
int CompareConstrained(const double* a, double va, const double* b, double vb,
                       std::size_t m) {
  const bool fa = va <= 0.0;
  const bool fb = vb <= 0.0;
  if (fa != fb) return fa ? 1 : -1;
  if (!fa) return va < vb ? 1 : (vb < va ? -1 : 0);
  bool a_better = false;
  bool b_better = false;
  for (std::size_t k = 0; k < m; ++k) {
    if (a[k] < b[k]) {
      a_better = true;
    } else if (b[k] < a[k]) {
      b_better = true;
    }
    if (a_better && b_better) return 0;
  }
  if (a_better) return 1;
  return b_better ? -1 : 0;
}

// FastNondominatedSort under ConstraintDominates over flat copies of the
// objectives; this is the hot loop of every generation.
std::vector<std::vector<std::size_t>> ConstrainedSort(
    const std::vector<EvaluatedIndividual>& pool) {
  const std::size_t n = pool.size();
  const std::size_t m = n == 0 ? 0 : pool.front().objectives.size();
  std::vector<double> flat(n * m);
  std::vector<double> violation(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(pool[i].objectives.begin(), pool[i].objectives.end(),
              flat.begin() + static_cast<std::ptrdiff_t>(i * m));
    violation[i] = pool[i].violation;
  }
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int c = CompareConstrained(&flat[i * m], violation[i], &flat[j * m],
                                       violation[j], m);
      if (c > 0) {
        dominated_by[i].push_back(j);
        ++domination_count[j];
      } else if (c < 0) {
        dominated_by[j].push_back(i);
        ++domination_count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    fronts.push_back(std::move(current));
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

RankedPopulation SelectSurvivors(std::vector<EvaluatedIndividual> pool,
                                 std::size_t size) {
  const auto fronts = ConstrainedSort(pool);
  RankedPopulation next;
  for (std::size_t f = 0; f < fronts.size() && next.members.size() < size;
       ++f) {
    const auto& front = fronts[f];
    const std::vector<double> crowd = CrowdingDistance(ObjectivesOf(pool, front));
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t room = size - next.members.size();
    if (front.size() > room) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return crowd[a] > crowd[b];
                       });
      order.resize(room);
    }
    for (std::size_t k : order) {
      next.members.push_back(std::move(pool[front[k]]));
      next.rank.push_back(f);
      next.crowding.push_back(crowd[k]);
    }
  }
  return next;
}

std::size_t CrowdedTournament(const RankedPopulation& pop, Random& rng) {
  const std::size_t i = rng.Below(pop.members.size());
  const std::size_t j = rng.Below(pop.members.size());
  if (ConstraintDominates(pop.members[i], pop.members[j])) return i;
  if (ConstraintDominates(pop.members[j], pop.members[i])) return j;
  if (pop.crowding[j] > pop.crowding[i]) return j;
  return i;
}

ParetoArchive LeastViolating(const std::vector<EvaluatedIndividual>& pop,
                             std::size_t generation) {
  ParetoArchive archive;
  archive.generation = generation;
  archive.feasible = false;
  if (pop.empty()) return archive;
  double least = std::numeric_limits<double>::infinity();
  for (const auto& ind : pop) least = std::min(least, ind.violation);
  std::vector<EvaluatedIndividual> best;
  for (const auto& ind : pop) {
    if (ind.violation == least) best.push_back(ind);
  }
  archive.members = NondominatedUnique(std::move(best));
  return archive;
}

}  // namespace

std::vector<std::size_t> SelectedIndices(const Chromosome& genes) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < genes.size(); ++k) {
    if (genes[k]) out.push_back(k);
  }
  return out;
}

Chromosome ChromosomeFromIndices(std::size_t length,
                                 std::span<const std::size_t> selected) {
  Chromosome genes(length, 0);
  for (std::size_t k : selected) genes.at(k) = 1;
  return genes;
}

void EAParams::Validate() const {
  if (population < 2) throw ConfigError("population must be at least 2");
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw ConfigError("crossover probability must lie in [0, 1]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw ConfigError("mutation probability must lie in [0, 1]");
  }
  if (elitism > population) {
    throw ConfigError("elitism count exceeds population size");
  }
}

GaResult RunElitistGa(const SingleObjectiveProblem& problem,
                      const EAParams& params) {
  params.Validate();
  if (!problem.evaluate) throw ConfigError("GA problem has no evaluator");
  Random rng(params.seed);

  std::vector<EvaluatedIndividual> pop;
  pop.reserve(params.population);
  for (std::size_t p = 0; p < params.population; ++p) {
    Chromosome genes = problem.initialize ? problem.initialize(rng)
                                          : RandomBits(problem.genes, 0.5, rng);
    if (problem.repair) problem.repair(genes, rng);
    pop.push_back(Evaluate(problem.evaluate, std::move(genes)));
  }
  std::stable_sort(pop.begin(), pop.end(), Better);

  GaResult result;
  result.trace.push_back(pop.front().objectives[0]);
  result.trace_violation.push_back(pop.front().violation);

  auto tournament = [&](Random& r) -> const EvaluatedIndividual& {
    const std::size_t i = r.Below(pop.size());
    const std::size_t j = r.Below(pop.size());
    return Better(pop[j], pop[i]) ? pop[j] : pop[i];
  };

  for (std::size_t g = 1; g <= params.generations; ++g) {
    std::vector<EvaluatedIndividual> next(
        pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(params.elitism));
    while (next.size() < params.population) {
      const EvaluatedIndividual& p1 = tournament(rng);
      const EvaluatedIndividual& p2 = tournament(rng);
      auto [c1, c2] = Breed(p1.genes, p2.genes, params, problem.repair, rng);
      next.push_back(Evaluate(problem.evaluate, std::move(c1)));
      if (next.size() < params.population) {
        next.push_back(Evaluate(problem.evaluate, std::move(c2)));
      }
    }
    pop = std::move(next);
    std::stable_sort(pop.begin(), pop.end(), Better);
    result.trace.push_back(pop.front().objectives[0]);
    result.trace_violation.push_back(pop.front().violation);
  }

  result.best = pop.front();
  result.feasible = result.best.feasible();
  return result;
}

bool Dominates(std::span<const double> a, std::span<const double> b) {
  bool strictly = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strictly = true;
  }
  return strictly;
}

bool ConstraintDominates(const EvaluatedIndividual& a,
                         const EvaluatedIndividual& b) {
  const bool fa = a.feasible();
  const bool fb = b.feasible();
  if (fa && !fb) return true;
  if (!fa && fb) return false;
  if (!fa && !fb) return a.violation < b.violation;
  return Dominates(a.objectives, b.objectives);
}

std::vector<std::vector<std::size_t>> FastNondominatedSort(
    std::size_t count,
    const std::function<bool(std::size_t, std::size_t)>& dominates) {
  std::vector<std::vector<std::size_t>> dominated_by(count);
  std::vector<std::size_t> domination_count(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (dominates(i, j)) {
        dominated_by[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(j, i)) {
        dominated_by[j].push_back(i);
        ++domination_count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < count; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    fronts.push_back(std::move(current));
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<std::vector<std::size_t>> FastNondominatedSort(
    std::span<const std::vector<double>> points) {
  return FastNondominatedSort(points.size(), [&](std::size_t i, std::size_t j) {
    return Dominates(points[i], points[j]);
  });
}

std::vector<double> CrowdingDistance(std::span<const std::vector<double>> front) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInf);
    return distance;
  }
  const std::size_t m = front.front().size();
  std::vector<std::size_t> order(n);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return front[a][obj] < front[b][obj];
                     });
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    const double range = front[order.back()][obj] - front[order.front()][obj];
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] +=
          (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / range;
    }
  }
  return distance;
}

std::vector<EvaluatedIndividual> NondominatedUnique(
    std::vector<EvaluatedIndividual> individuals) {
  std::sort(individuals.begin(), individuals.end(),
            [](const EvaluatedIndividual& a, const EvaluatedIndividual& b) {
              if (a.objectives != b.objectives) return a.objectives < b.objectives;
              return a.genes < b.genes;
            });
  // In lexicographic order every dominator precedes the points it dominates,
  // so checking against the kept set is enough.
  std::vector<EvaluatedIndividual> kept;
  for (auto& candidate : individuals) {
    bool drop = false;
    for (const auto& k : kept) {
      if (k.objectives == candidate.objectives ||
          Dominates(k.objectives, candidate.objectives)) {
        drop = true;
        break;
      }
    }
    if (!drop) kept.push_back(std::move(candidate));
  }
  return kept;
}

Nsga2Result RunNsga2(const MultiObjectiveProblem& problem,
                     const EAParams& params) {
  params.Validate();
  if (!problem.evaluate) throw ConfigError("MOEA problem has no evaluator");
  Random rng(params.seed);

  std::vector<EvaluatedIndividual> initial;
  initial.reserve(params.population);
  for (std::size_t p = 0; p < params.population; ++p) {
    Chromosome genes;
    if (problem.initialize) {
      genes = problem.initialize(rng);
    } else {
      const double density = rng.Uniform01();
      genes = RandomBits(problem.genes, density, rng);
    }
    if (problem.repair) problem.repair(genes, rng);
    initial.push_back(Evaluate(problem.evaluate, std::move(genes)));
  }

  Nsga2Result result;
  std::vector<EvaluatedIndividual> archive;
  auto absorb = [&](const std::vector<EvaluatedIndividual>& batch,
                    std::size_t generation) {
    std::vector<EvaluatedIndividual> merged = std::move(archive);
    for (const auto& ind : batch) {
      if (ind.feasible()) merged.push_back(ind);
    }
    archive = NondominatedUnique(std::move(merged));
    result.history.push_back({generation, archive, !archive.empty()});
  };
  absorb(initial, 0);
  RankedPopulation pop = SelectSurvivors(std::move(initial), params.population);

  for (std::size_t g = 1; g <= params.generations; ++g) {
    std::vector<EvaluatedIndividual> offspring;
    offspring.reserve(params.population);
    while (offspring.size() < params.population) {
      const std::size_t a = CrowdedTournament(pop, rng);
      const std::size_t b = CrowdedTournament(pop, rng);
      auto [c1, c2] = Breed(pop.members[a].genes, pop.members[b].genes, params,
                            problem.repair, rng);
      offspring.push_back(Evaluate(problem.evaluate, std::move(c1)));
      if (offspring.size() < params.population) {
        offspring.push_back(Evaluate(problem.evaluate, std::move(c2)));
      }
    }
    absorb(offspring, g);
    std::vector<EvaluatedIndividual> pool = std::move(pop.members);
    pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
                std::make_move_iterator(offspring.end()));
    pop = SelectSurvivors(std::move(pool), params.population);
  }

  result.final_population = pop.members;
  if (!archive.empty()) {
    result.final_archive = {params.generations, archive, true};
  } else {
    result.final_archive = LeastViolating(pop.members, params.generations);
  }
  return result;
}

}  // namespace firesite

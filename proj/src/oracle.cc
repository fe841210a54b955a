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

#include "firesite/oracle.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "firesite/error.h"

namespace firesite {
namespace {

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::uint64_t BinomialCoefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

ExactMacroResult BruteForceMacro(const MacroProblem& problem,
                                 std::uint64_t limit) {
  const std::size_t n = problem.candidate_count();
  const std::size_t k = problem.new_stations();
  const std::uint64_t total = BinomialCoefficient(n, k);
  if (total > limit) {
    throw OracleGuardError("macro oracle: C(" + std::to_string(n) + ", " +
                           std::to_string(k) + ") = " + std::to_string(total) +
                           " subsets exceeds the limit of " +
                           std::to_string(limit));
  }
  const auto start = std::chrono::steady_clock::now();
  ExactMacroResult result;
  std::vector<std::size_t> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i;
  while (true) {
    ++result.enumerated;
    if (problem.Violation(subset) <= 0.0) {
      const double fitness = problem.Fitness(subset);
      if (!result.feasible || fitness > result.best_fitness) {
        result.feasible = true;
        result.best_fitness = fitness;
        result.optimal_subsets.clear();
      }
      if (fitness == result.best_fitness) result.optimal_subsets.push_back(subset);
    }
    // Next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && subset[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++subset[pos - 1];
    for (std::size_t i = pos; i < k; ++i) subset[i] = subset[i - 1] + 1;
  }
  result.seconds = SecondsSince(start);
  return result;
}

ExactMicroResult ExactParetoMicro(const MicroProblem& problem,
                                  std::size_t max_sites) {
  const std::size_t n = problem.candidate_count();
  if (n > max_sites) {
    throw OracleGuardError("micro oracle: " + std::to_string(n) +
                           " candidates exceeds the limit of " +
                           std::to_string(max_sites));
  }
  const auto start = std::chrono::steady_clock::now();
  ExactMicroResult result;
  std::vector<EvaluatedIndividual> feasible;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<std::size_t> selected;
  std::size_t compact_at = 4096;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    ++result.enumerated;
    selected.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1U) selected.push_back(j);
    }
    if (problem.Violation(selected) > 0.0) continue;
    ++result.feasible_count;
    feasible.push_back({ChromosomeFromIndices(n, selected),
                        problem.Objectives(selected).AsVector(), 0.0});
    // Keep memory bounded on the larger instances.
    if (feasible.size() >= compact_at) {
      feasible = NondominatedUnique(std::move(feasible));
      compact_at = 2 * feasible.size() + 4096;
    }
  }
  result.front = NondominatedUnique(std::move(feasible));
  result.seconds = SecondsSince(start);
  return result;
}

}  // namespace firesite

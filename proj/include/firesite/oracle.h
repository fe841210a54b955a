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

#ifndef FIRESITE_ORACLE_H_
#define FIRESITE_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "firesite/evolutionary.h"
#include "firesite/macro_model.h"
#include "firesite/micro_model.h"

namespace firesite {

inline constexpr std::uint64_t kMacroOracleLimit = 1'000'000;
inline constexpr std::size_t kMicroOracleMaxSites = 20;

struct ExactMacroResult {
  bool feasible = false;
  double best_fitness = 0.0;
  // Every feasible N-subset attaining best_fitness, in lexicographic order.
  std::vector<std::vector<std::size_t>> optimal_subsets;
  std::uint64_t enumerated = 0;
  double seconds = 0.0;
};

// Exhaustive scan of all C(|J1|, N) subsets. Throws OracleGuardError when the
// count exceeds `limit`.
ExactMacroResult BruteForceMacro(const MacroProblem& problem,
                                 std::uint64_t limit = kMacroOracleLimit);

struct ExactMicroResult {
  // Exact feasible Pareto set, one member per distinct objective vector.
  std::vector<EvaluatedIndividual> front;
  std::uint64_t enumerated = 0;
  std::uint64_t feasible_count = 0;
  double seconds = 0.0;
};

// Exhaustive scan of all 2^|J2| subsets. Throws OracleGuardError above
// `max_sites` candidates.
ExactMicroResult ExactParetoMicro(const MicroProblem& problem,
                                  std::size_t max_sites = kMicroOracleMaxSites);

// C(n, k), saturating at UINT64_MAX.
std::uint64_t BinomialCoefficient(std::size_t n, std::size_t k);

}  // namespace firesite

#endif  // FIRESITE_ORACLE_H_

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

#include "firesite/selection.h"

#include <numeric>

#include "firesite/error.h"
#include "firesite/metrics.h"

namespace firesite {

RepresentativeSet PickRepresentatives(
    std::span<const std::vector<double>> objectives,
    std::span<const std::size_t> solution_ids, std::span<const double> weights) {
  if (objectives.empty()) throw DomainError("cannot select from an empty archive");
  if (solution_ids.size() != objectives.size()) {
    throw DomainError("solution ids do not match the archive");
  }
  const std::size_t m = objectives.front().size();
  std::vector<double> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(m, 1.0);
  if (w.size() != m) throw DomainError("weight count does not match objectives");

  const Front front(objectives.begin(), objectives.end());
  const Front fronts[] = {front};
  const Front normalized = Normalize(front, BoundsOf(fronts));
  std::vector<double> score(front.size(), 0.0);
  for (std::size_t i = 0; i < front.size(); ++i) {
    for (std::size_t k = 0; k < m; ++k) score[i] += w[k] * normalized[i][k];
  }

  // key(i) < key(j) on the primary value, then lexicographic, then id.
  auto argmin = [&](auto primary) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i) {
      const double pi = primary(i);
      const double pb = primary(best);
      if (pi != pb) {
        if (pi < pb) best = i;
        continue;
      }
      if (front[i] != front[best]) {
        if (front[i] < front[best]) best = i;
        continue;
      }
      if (solution_ids[i] < solution_ids[best]) best = i;
    }
    return best;
  };
  auto make = [&](char label, std::size_t i) {
    return Representative{label, i, solution_ids[i], front[i], score[i]};
  };

  RepresentativeSet set;
  set.a = make('A', argmin([&](std::size_t i) { return front[i][0]; }));
  set.b = make('B', argmin([&](std::size_t i) { return front[i][1]; }));
  set.c = make('C', argmin([&](std::size_t i) { return front[i][2]; }));
  set.d = make('D', argmin([&](std::size_t i) { return score[i]; }));
  return set;
}

RepresentativeSet PickRepresentatives(const ParetoArchive& archive,
                                      std::span<const double> weights) {
  std::vector<std::size_t> ids(archive.members.size());
  std::iota(ids.begin(), ids.end(), 0);
  return PickRepresentatives(ObjectivesOf(archive), ids, weights);
}

}  // namespace firesite

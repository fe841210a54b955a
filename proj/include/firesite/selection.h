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

#ifndef FIRESITE_SELECTION_H_
#define FIRESITE_SELECTION_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "firesite/evolutionary.h"

namespace firesite {

struct Representative {
  char label = 'A';
  std::size_t index = 0;        // position in the input archive
  std::size_t solution_id = 0;
  std::vector<double> objectives;
  double score = 0.0;           // weighted normalized sum
};

// A, B, C minimize F1, F2, F3 respectively; D minimizes the weighted sum of
// min-max normalized objectives over the archive.
struct RepresentativeSet {
  Representative a;
  Representative b;
  Representative c;
  Representative d;

  std::array<const Representative*, 4> All() const { return {&a, &b, &c, &d}; }
};

// Ties on the target objective fall back to the full objective vector in
// lexicographic order, then to the smaller solution id. Zero-range objectives
// contribute 0 to the normalized score. Throws DomainError on an empty
// archive or mismatched input sizes.
RepresentativeSet PickRepresentatives(
    std::span<const std::vector<double>> objectives,
    std::span<const std::size_t> solution_ids,
    std::span<const double> weights = {});

// Archive overload: solution ids are archive positions.
RepresentativeSet PickRepresentatives(const ParetoArchive& archive,
                                      std::span<const double> weights = {});

}  // namespace firesite

#endif  // FIRESITE_SELECTION_H_

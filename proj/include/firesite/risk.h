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

#ifndef FIRESITE_RISK_H_
#define FIRESITE_RISK_H_

#include <span>
#include <string>
#include <vector>

namespace firesite {

// Natural-breaks (Fisher-Jenks) classification of a 1-D sample.
struct Classification {
  // Rank of each input value, 1..k, ascending with value.
  std::vector<int> ranks;
  // Largest value in each class; class c covers (upper[c-1], upper[c]].
  std::vector<double> upper_bounds;
};

// Exact dynamic-programming optimum of the within-class sum of squared
// deviations over all partitions of the sorted distinct values into `classes`
// contiguous groups. Equal values always share a class. Throws DomainError
// when `classes` exceeds the number of distinct values.
Classification NaturalBreaks(std::span<const double> values, int classes);

// Rank of `value` under published class upper bounds, where class c (1-based)
// is the half-open interval (upper[c-2], upper[c-1]]. Values at or below the
// first bound land in class 1; values above the last bound are clamped to k.
int RankByBreaks(double value, std::span<const double> upper_bounds);

// Weighted fusion of the accident and density ranks; gamma in (0, 1).
double FuseRisk(double accident_rank, double density_rank, double gamma);

struct RiskInput {
  std::string id;
  long accidents = 0;
  double density = 0.0;  // thousand persons per km^2
};

struct RiskScore {
  std::string id;
  int accident_rank = 0;
  int density_rank = 0;
  double demand = 0.0;
};

// Classifies both attributes into `classes` groups and fuses them.
std::vector<RiskScore> ScoreRisk(std::span<const RiskInput> inputs,
                                 int classes = 4, double gamma = 0.5);

}  // namespace firesite

#endif  // FIRESITE_RISK_H_

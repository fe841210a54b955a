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

#include "firesite/risk.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "firesite/error.h"

namespace firesite {

Classification NaturalBreaks(std::span<const double> values, int classes) {
  if (values.empty()) throw DomainError("natural breaks: no values");
  if (classes < 1) throw DomainError("natural breaks: class count must be >= 1");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("natural breaks: non-finite value");
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct;
  std::vector<double> counts;
  for (double v : sorted) {
    if (distinct.empty() || v != distinct.back()) {
      distinct.push_back(v);
      counts.push_back(0.0);
    }
    counts.back() += 1.0;
  }
  const std::size_t m = distinct.size();
  const std::size_t k = static_cast<std::size_t>(classes);
  if (k > m) {
    throw DomainError("natural breaks: more classes than distinct values");
  }

  // Centre before accumulating to limit cancellation in the SSD terms.
  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= static_cast<double>(sorted.size());
  std::vector<double> w(m + 1, 0.0), s1(m + 1, 0.0), s2(m + 1, 0.0);
  for (std::size_t t = 0; t < m; ++t) {
    const double c = distinct[t] - mean;
    w[t + 1] = w[t] + counts[t];
    s1[t + 1] = s1[t] + counts[t] * c;
    s2[t + 1] = s2[t] + counts[t] * c * c;
  }
  // SSD of distinct values [a, b).
  auto ssd = [&](std::size_t a, std::size_t b) {
    const double n = w[b] - w[a];
    const double s = s1[b] - s1[a];
    return std::max(0.0, (s2[b] - s2[a]) - s * s / n);
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[c][t]: best SSD for the first t distinct values in c classes.
  std::vector<std::vector<double>> cost(k + 1, std::vector<double>(m + 1, kInf));
  std::vector<std::vector<std::size_t>> split(k + 1,
                                              std::vector<std::size_t>(m + 1, 0));
  cost[0][0] = 0.0;
  for (std::size_t c = 1; c <= k; ++c) {
    for (std::size_t t = c; t <= m - (k - c); ++t) {
      for (std::size_t a = c - 1; a < t; ++a) {
        if (cost[c - 1][a] == kInf) continue;
        const double candidate = cost[c - 1][a] + ssd(a, t);
        if (candidate < cost[c][t]) {
          cost[c][t] = candidate;
          split[c][t] = a;
        }
      }
    }
  }

  std::vector<int> class_of_distinct(m);
  Classification result;
  result.upper_bounds.resize(k);
  std::size_t end = m;
  for (std::size_t c = k; c >= 1; --c) {
    const std::size_t begin = split[c][end];
    for (std::size_t t = begin; t < end; ++t) {
      class_of_distinct[t] = static_cast<int>(c);
    }
    result.upper_bounds[c - 1] = distinct[end - 1];
    end = begin;
  }
  result.ranks.reserve(values.size());
  for (double v : values) {
    const auto pos = std::lower_bound(distinct.begin(), distinct.end(), v) -
                     distinct.begin();
    result.ranks.push_back(class_of_distinct[static_cast<std::size_t>(pos)]);
  }
  return result;
}

int RankByBreaks(double value, std::span<const double> upper_bounds) {
  if (upper_bounds.empty()) throw DomainError("rank by breaks: no classes");
  for (std::size_t c = 0; c < upper_bounds.size(); ++c) {
    if (value <= upper_bounds[c]) return static_cast<int>(c + 1);
  }
  return static_cast<int>(upper_bounds.size());
}

double FuseRisk(double accident_rank, double density_rank, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("risk weight gamma must lie in (0, 1)");
  }
  return gamma * accident_rank + (1.0 - gamma) * density_rank;
}

std::vector<RiskScore> ScoreRisk(std::span<const RiskInput> inputs,
                                 int classes, double gamma) {
  std::vector<double> accidents;
  std::vector<double> densities;
  for (const RiskInput& in : inputs) {
    if (in.accidents < 0) {
      throw DomainError("accident count must be non-negative at '" + in.id + "'");
    }
    if (!std::isfinite(in.density) || in.density < 0.0) {
      throw DomainError("density must be finite and non-negative at '" + in.id +
                        "'");
    }
    accidents.push_back(static_cast<double>(in.accidents));
    densities.push_back(in.density);
  }
  const Classification by_accidents = NaturalBreaks(accidents, classes);
  const Classification by_density = NaturalBreaks(densities, classes);
  std::vector<RiskScore> scores;
  scores.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const int ra = by_accidents.ranks[i];
    const int rp = by_density.ranks[i];
    scores.push_back({inputs[i].id, ra, rp, FuseRisk(ra, rp, gamma)});
  }
  return scores;
}

}  // namespace firesite

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
#include <limits>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "firesite/error.h"

namespace firesite {
namespace {

double WithinClassSsd(const std::vector<double>& values, const std::vector<int>& ranks,
                      int k) {
  double total = 0.0;
  for (int c = 1; c <= k; ++c) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (ranks[i] == c) {
        sum += values[i];
        ++n;
      }
    }
    if (n == 0) continue;
    const double mean = sum / n;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (ranks[i] == c) total += (values[i] - mean) * (values[i] - mean);
    }
  }
  return total;
}

// Exhaustive search over every way of cutting the sorted distinct values into
// k contiguous non-empty groups.
double ExhaustiveBestSsd(const std::vector<double>& values, int k) {
  std::vector<double> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const int m = static_cast<int>(distinct.size());
  double best = std::numeric_limits<double>::infinity();
  // Bit b set = cut after distinct[b].
  for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
    if (__builtin_popcount(mask) != k - 1) continue;
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const int pos = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), values[i]) -
          distinct.begin());
      int rank = 1;
      for (int b = 0; b < pos; ++b) rank += (mask >> b) & 1u;
      ranks[i] = rank;
    }
    best = std::min(best, WithinClassSsd(values, ranks, k));
  }
  return best;
}

TEST(NaturalBreaksTest, TwoObviousClusters) {
  const std::vector<double> v = {1, 2, 3, 10, 11, 12};
  const auto c = NaturalBreaks(v, 2);
  EXPECT_EQ(c.ranks, (std::vector<int>{1, 1, 1, 2, 2, 2}));
  EXPECT_EQ(c.upper_bounds, (std::vector<double>{3, 12}));
}

TEST(NaturalBreaksTest, SingleClass) {
  const std::vector<double> v = {5, 1, 9, 9};
  EXPECT_EQ(NaturalBreaks(v, 1).ranks, (std::vector<int>{1, 1, 1, 1}));
}

TEST(NaturalBreaksTest, TooManyClassesIsDomainError) {
  const std::vector<double> v = {1, 1, 2};
  EXPECT_THROW(NaturalBreaks(v, 3), DomainError);
}

TEST(NaturalBreaksTest, PublishedAccidentBreaks) {
  const std::vector<double> upper = {14, 26, 46, 99};
  EXPECT_EQ(RankByBreaks(30, upper), 3);
  EXPECT_EQ(RankByBreaks(26, upper), 2);
  EXPECT_EQ(RankByBreaks(0, upper), 1);
  EXPECT_EQ(RankByBreaks(99, upper), 4);
}

TEST(NaturalBreaksTest, MatchesExhaustiveSearch) {
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> u(0, 40);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + trial % 9;  // 4..12 values
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    std::vector<double> distinct = v;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int k = 1; k <= std::min<int>(4, distinct.size()); ++k) {
      const auto c = NaturalBreaks(v, k);
      EXPECT_NEAR(WithinClassSsd(v, c.ranks, k), ExhaustiveBestSsd(v, k), 1e-9)
          << "trial " << trial << " k " << k;
    }
  }
}

TEST(NaturalBreaksTest, EqualValuesShareAClassAndRanksAreMonotone) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> u(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> v(10);
    for (auto& x : v) x = u(gen);
    const auto c = NaturalBreaks(v, 3);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[i] == v[j]) EXPECT_EQ(c.ranks[i], c.ranks[j]);
        if (v[i] <= v[j]) EXPECT_LE(c.ranks[i], c.ranks[j]);
      }
    }
  }
}

TEST(NaturalBreaksTest, PermutationInvariant) {
  std::mt19937 gen(9);
  std::vector<double> v = {3, 8, 1, 22, 15, 15, 4, 30, 9, 2, 18};
  const auto base = NaturalBreaks(v, 4);
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> shuffled;
    for (std::size_t p : perm) shuffled.push_back(v[p]);
    const auto c = NaturalBreaks(shuffled, 4);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      EXPECT_EQ(c.ranks[k], base.ranks[perm[k]]);
    }
  }
}

TEST(FuseRiskTest, Examples) {
  EXPECT_DOUBLE_EQ(FuseRisk(4, 2, 0.5), 3.0);
  EXPECT_NEAR(FuseRisk(4, 1, 0.999), 4.0, 0.01);
  EXPECT_DOUBLE_EQ(FuseRisk(3, 3, 0.2), 3.0);
  EXPECT_THROW(FuseRisk(1, 2, 0.0), DomainError);
  EXPECT_THROW(FuseRisk(1, 2, 1.0), DomainError);
}

TEST(FuseRiskTest, StaysBetweenInputs) {
  for (int ra = 1; ra <= 4; ++ra)
    for (int rp = 1; rp <= 4; ++rp)
      for (double g = 0.05; g < 1.0; g += 0.1) {
        const double a = FuseRisk(ra, rp, g);
        EXPECT_GE(a, std::min(ra, rp) - 1e-12);
        EXPECT_LE(a, std::max(ra, rp) + 1e-12);
      }
}

TEST(ScoreRiskTest, FusesBothRankings) {
  std::vector<RiskInput> in;
  const long acc[] = {1, 2, 3, 10, 11, 12, 30, 31};
  const double dens[] = {50, 51, 1, 2, 20, 21, 5, 6};
  for (int i = 0; i < 8; ++i) in.push_back({"c" + std::to_string(i), acc[i], dens[i]});
  const auto scores = ScoreRisk(in, 2, 0.5);
  ASSERT_EQ(scores.size(), 8u);
  for (const auto& s : scores) {
    EXPECT_DOUBLE_EQ(s.demand, 0.5 * s.accident_rank + 0.5 * s.density_rank);
  }
  EXPECT_EQ(scores[0].accident_rank, 1);
  EXPECT_EQ(scores[7].accident_rank, 2);
  EXPECT_EQ(scores[0].density_rank, 2);
}

TEST(ScoreRiskTest, RejectsNegativeInputs) {
  std::vector<RiskInput> in = {{"a", -1, 1}, {"b", 2, 2}};
  EXPECT_THROW(ScoreRisk(in, 1, 0.5), DomainError);
}

}  // namespace
}  // namespace firesite

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
#include <vector>

#include <gtest/gtest.h>

#include "firesite/error.h"
#include "firesite/random.h"

namespace firesite {
namespace {

SingleObjectiveProblem OneMax(std::size_t genes) {
  SingleObjectiveProblem p;
  p.genes = genes;
  p.evaluate = [](const Chromosome& c) {
    return Evaluation{{static_cast<double>(std::count(c.begin(), c.end(), 1))}, 0.0};
  };
  return p;
}

// Bit count against the total weight of the set bits: the exact front keeps
// the k heaviest bits for every k.
MultiObjectiveProblem CountVersusWeight(std::size_t genes) {
  MultiObjectiveProblem p;
  p.genes = genes;
  p.objectives = 2;
  p.evaluate = [](const Chromosome& c) {
    double count = 0.0;
    double weight = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) {
        count += 1.0;
        weight += static_cast<double>(i + 1);
      }
    }
    return Evaluation{{count, -weight}, 0.0};
  };
  return p;
}

// Peels fronts by repeated O(n^2) scans.
std::vector<std::vector<std::size_t>> NaiveFronts(
    const std::vector<std::vector<double>>& points) {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<char> assigned(points.size(), 0);
  std::size_t left = points.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (assigned[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
        if (assigned[j] || i == j) continue;
        bool no_worse = true;
        bool better = false;
        for (std::size_t k = 0; k < points[i].size(); ++k) {
          if (points[j][k] > points[i][k]) no_worse = false;
          if (points[j][k] < points[i][k]) better = true;
        }
        dominated = no_worse && better;
      }
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) assigned[i] = 1;
    left -= front.size();
    fronts.push_back(front);
  }
  return fronts;
}

TEST(ChromosomeTest, IndicesRoundTrip) {
  const std::vector<std::size_t> sel = {1, 4, 5};
  const Chromosome c = ChromosomeFromIndices(7, sel);
  EXPECT_EQ(c, (Chromosome{0, 1, 0, 0, 1, 1, 0}));
  EXPECT_EQ(SelectedIndices(c), sel);
}

TEST(EAParamsTest, RejectsOutOfRange) {
  EAParams p;
  EXPECT_NO_THROW(p.Validate());
  p.population = 1;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = EAParams{};
  p.crossover_probability = 1.5;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = EAParams{};
  p.mutation_probability = -0.1;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = EAParams{};
  p.elitism = p.population + 1;
  EXPECT_THROW(p.Validate(), ConfigError);
}

TEST(DominanceTest, ParetoMinimization) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {2, 2};
  const std::vector<double> c = {0, 3};
  EXPECT_TRUE(Dominates(a, b));
  EXPECT_FALSE(Dominates(b, a));
  EXPECT_FALSE(Dominates(a, a));
  EXPECT_FALSE(Dominates(a, c));
  EXPECT_FALSE(Dominates(c, a));
}

TEST(DominanceTest, ConstraintDomination) {
  const EvaluatedIndividual feasible_bad{{}, {5, 5}, 0.0};
  const EvaluatedIndividual feasible_good{{}, {1, 1}, 0.0};
  const EvaluatedIndividual slight{{}, {0, 0}, 0.5};
  const EvaluatedIndividual heavy{{}, {0, 0}, 2.0};
  EXPECT_TRUE(ConstraintDominates(feasible_bad, slight));
  EXPECT_FALSE(ConstraintDominates(slight, feasible_bad));
  EXPECT_TRUE(ConstraintDominates(slight, heavy));
  EXPECT_FALSE(ConstraintDominates(heavy, slight));
  EXPECT_TRUE(ConstraintDominates(feasible_good, feasible_bad));
  EXPECT_FALSE(ConstraintDominates(feasible_bad, feasible_good));
  EXPECT_FALSE(ConstraintDominates(slight, slight));
}

TEST(NondominatedSortTest, MatchesNaivePeeling) {
  Random rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> points(40);
    for (auto& p : points) {
      // Coarse grid values force ties and duplicates.
      p = {static_cast<double>(rng.Below(6)), static_cast<double>(rng.Below(6)),
           static_cast<double>(rng.Below(6))};
    }
    EXPECT_EQ(FastNondominatedSort(points), NaiveFronts(points)) << trial;
  }
}

TEST(NondominatedSortTest, EveryIndexOnce) {
  const std::vector<std::vector<double>> points = {{1, 1}, {1, 1}, {0, 2}, {2, 2}};
  const auto fronts = FastNondominatedSort(points);
  ASSERT_EQ(fronts.size(), 2u);
  EXPECT_EQ(fronts[0], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(fronts[1], (std::vector<std::size_t>{3}));
}

TEST(CrowdingTest, ThreePointFront) {
  const std::vector<std::vector<double>> front = {{0, 2}, {1, 1}, {2, 0}};
  const auto d = CrowdingDistance(front);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_TRUE(std::isinf(d[0]));
  EXPECT_TRUE(std::isinf(d[2]));
  EXPECT_DOUBLE_EQ(d[1], 2.0);
}

TEST(CrowdingTest, ZeroRangeObjectiveAddsNothing) {
  const std::vector<std::vector<double>> front = {{0, 5}, {1, 5}, {3, 5}};
  const auto d = CrowdingDistance(front);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
}

TEST(NondominatedUniqueTest, DeduplicatesAndSorts) {
  std::vector<EvaluatedIndividual> in = {
      {{1, 0}, {2, 1}, 0.0}, {{0, 1}, {1, 2}, 0.0}, {{1, 1}, {1, 2}, 0.0},
      {{0, 0}, {3, 3}, 0.0}};
  const auto out = NondominatedUnique(in);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].objectives, (std::vector<double>{1, 2}));
  EXPECT_EQ(out[1].objectives, (std::vector<double>{2, 1}));
}

TEST(ElitistGaTest, SolvesOneMaxOnFiveSeeds) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EAParams params;
    params.population = 60;
    params.generations = 150;
    params.mutation_probability = 1.0 / 30.0;
    params.seed = seed;
    const GaResult r = RunElitistGa(OneMax(30), params);
    EXPECT_DOUBLE_EQ(r.best.objectives[0], 30.0) << "seed " << seed;
    EXPECT_TRUE(r.feasible);
  }
}

TEST(ElitistGaTest, TraceIsMonotoneAndSized) {
  EAParams params;
  params.population = 20;
  params.generations = 40;
  params.mutation_probability = 0.05;
  const GaResult r = RunElitistGa(OneMax(40), params);
  ASSERT_EQ(r.trace.size(), 41u);
  ASSERT_EQ(r.trace_violation.size(), 41u);
  for (std::size_t g = 1; g < r.trace.size(); ++g) {
    EXPECT_GE(r.trace[g], r.trace[g - 1]);
  }
  EXPECT_DOUBLE_EQ(r.trace.back(), r.best.objectives[0]);
}

TEST(ElitistGaTest, DeterministicForSeed) {
  EAParams params;
  params.population = 16;
  params.generations = 25;
  params.mutation_probability = 0.05;
  params.seed = 42;
  const GaResult a = RunElitistGa(OneMax(25), params);
  const GaResult b = RunElitistGa(OneMax(25), params);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.best.genes, b.best.genes);
}

TEST(ElitistGaTest, NoVariationKeepsElite) {
  EAParams params;
  params.population = 10;
  params.generations = 30;
  params.crossover_probability = 0.0;
  params.mutation_probability = 0.0;
  const GaResult r = RunElitistGa(OneMax(20), params);
  for (double f : r.trace) EXPECT_DOUBLE_EQ(f, r.trace[0]);
}

TEST(ElitistGaTest, PrefersFeasible) {
  SingleObjectiveProblem p;
  p.genes = 8;
  // More bits score higher but more than three bits violate.
  p.evaluate = [](const Chromosome& c) {
    const double n = static_cast<double>(std::count(c.begin(), c.end(), 1));
    return Evaluation{{n}, std::max(0.0, n - 3.0)};
  };
  EAParams params;
  params.population = 30;
  params.generations = 60;
  params.mutation_probability = 0.1;
  const GaResult r = RunElitistGa(p, params);
  EXPECT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.best.objectives[0], 3.0);
}

TEST(Nsga2Test, FindsExactFront) {
  EAParams params;
  params.population = 60;
  params.generations = 150;
  params.mutation_probability = 0.1;
  const Nsga2Result r = RunNsga2(CountVersusWeight(10), params);
  ASSERT_TRUE(r.final_archive.feasible);
  std::vector<std::vector<double>> expected;
  for (int k = 0; k <= 10; ++k) {
    double w = 0.0;
    for (int i = 0; i < k; ++i) w += 10 - i;
    expected.push_back({static_cast<double>(k), -w});
  }
  std::vector<std::vector<double>> got;
  for (const auto& m : r.final_archive.members) got.push_back(m.objectives);
  EXPECT_EQ(got, expected);
}

TEST(Nsga2Test, HistoryNeverRegresses) {
  EAParams params;
  params.population = 20;
  params.generations = 30;
  params.mutation_probability = 0.05;
  const Nsga2Result r = RunNsga2(CountVersusWeight(12), params);
  ASSERT_EQ(r.history.size(), 31u);
  EXPECT_EQ(r.final_population.size(), 20u);
  for (std::size_t g = 1; g < r.history.size(); ++g) {
    for (const auto& old : r.history[g - 1].members) {
      const bool kept = std::any_of(
          r.history[g].members.begin(), r.history[g].members.end(),
          [&](const EvaluatedIndividual& m) {
            return m.objectives == old.objectives ||
                   Dominates(m.objectives, old.objectives);
          });
      EXPECT_TRUE(kept) << "generation " << g;
    }
  }
}

TEST(Nsga2Test, DeterministicForSeed) {
  EAParams params;
  params.population = 20;
  params.generations = 20;
  params.seed = 9;
  const Nsga2Result a = RunNsga2(CountVersusWeight(12), params);
  const Nsga2Result b = RunNsga2(CountVersusWeight(12), params);
  ASSERT_EQ(a.final_archive.members.size(), b.final_archive.members.size());
  for (std::size_t i = 0; i < a.final_archive.members.size(); ++i) {
    EXPECT_EQ(a.final_archive.members[i].genes, b.final_archive.members[i].genes);
  }
}

TEST(Nsga2Test, InfeasibleArchiveFlagged) {
  MultiObjectiveProblem p = CountVersusWeight(6);
  p.evaluate = [](const Chromosome& c) {
    return Evaluation{{static_cast<double>(c.size()), 0.0}, 1.0 + c[0]};
  };
  EAParams params;
  params.population = 10;
  params.generations = 5;
  const Nsga2Result r = RunNsga2(p, params);
  EXPECT_FALSE(r.final_archive.feasible);
  ASSERT_FALSE(r.final_archive.members.empty());
  for (const auto& m : r.final_archive.members) EXPECT_DOUBLE_EQ(m.violation, 1.0);
}

}  // namespace
}  // namespace firesite

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

#include "firesite/io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "firesite/error.h"
#include "firesite/instance.h"
#include "firesite/random.h"
#include "firesite/synth.h"
#include "test_support.h"

namespace firesite {
namespace {

using testing::TempDir;

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

TEST(NumberTest, ShortestRoundTrip) {
  Random rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.Uniform01() - 0.5) * std::pow(10.0, static_cast<int>(rng.Below(20)) - 10);
    EXPECT_EQ(ParseNumber(FormatNumber(v)), v);
  }
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(3.0), "3");
  EXPECT_TRUE(std::isinf(ParseNumber("inf")));
  EXPECT_LT(ParseNumber("-inf"), 0.0);
}

TEST(NumberTest, RejectsGarbage) {
  EXPECT_THROW(ParseNumber(""), ValidationError);
  EXPECT_THROW(ParseNumber("1.5x"), ValidationError);
  EXPECT_THROW(ParseNumber("abc"), ValidationError);
}

TEST(CsvTest, ReadsAndValidates) {
  const TempDir dir;
  WriteText(dir.path() / "ok.csv", "a,b\n1,2\n3,4\n");
  const CsvTable t = ReadCsv(dir.path() / "ok.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][t.Column("b")], "4");
  EXPECT_THROW(t.Column("c"), ValidationError);
  WriteText(dir.path() / "bad.csv", "a,b\n1\n");
  EXPECT_THROW(ReadCsv(dir.path() / "bad.csv"), ValidationError);
  WriteText(dir.path() / "empty.csv", "");
  EXPECT_THROW(ReadCsv(dir.path() / "empty.csv"), ValidationError);
  EXPECT_THROW(ReadCsv(dir.path() / "missing.csv"), ValidationError);
}

TEST(CsvTest, RiskInputs) {
  const TempDir dir;
  WriteText(dir.path() / "risk.csv", "id,accidents,density\nc1,30,12.5\nc2,4,3\n");
  const auto inputs = ReadRiskInputsCsv(dir.path() / "risk.csv");
  ASSERT_EQ(inputs.size(), 2u);
  EXPECT_EQ(inputs[0].id, "c1");
  EXPECT_EQ(inputs[0].accidents, 30);
  EXPECT_DOUBLE_EQ(inputs[0].density, 12.5);
  WriteText(dir.path() / "frac.csv", "id,accidents,density\nc1,3.5,1\n");
  EXPECT_THROW(ReadRiskInputsCsv(dir.path() / "frac.csv"), ValidationError);
}

TEST(IdsTest, JoinSplitAndLookup) {
  const std::vector<std::string> ids = {"n0_1", "n2_3"};
  EXPECT_EQ(JoinIds(ids), "n0_1;n2_3");
  EXPECT_EQ(SplitIds("n0_1;n2_3"), ids);
  EXPECT_TRUE(SplitIds("").empty());
  const std::vector<std::string> bad = {"a;b"};
  EXPECT_THROW(JoinIds(bad), ValidationError);
  const PointSet cands = {{"x", 0, 0}, {"y", 1, 1}};
  const std::vector<std::string> want = {"y", "x"};
  EXPECT_EQ(IndicesOfIds(cands, want), (std::vector<std::size_t>{1, 0}));
  const std::vector<std::string> unknown = {"z"};
  EXPECT_THROW(IndicesOfIds(cands, unknown), ValidationError);
}

TEST(ArchiveCsvTest, RoundTrip) {
  const TempDir dir;
  ParetoArchive archive;
  archive.members = {{{1, 0, 1}, {2, 0.125, -1.5}, 0.0}, {{0, 1, 0}, {1, 3.0, 0.0}, 0.0}};
  const PointSet cands = {{"a", 0, 0}, {"b", 1, 0}, {"c", 2, 0}};
  const auto rows = ArchiveRows(archive, cands);
  WriteArchiveCsv(dir.path() / "arch.csv", rows);
  const auto back = ReadArchiveCsv(dir.path() / "arch.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].solution, 0u);
  EXPECT_EQ(back[0].objectives, archive.members[0].objectives);
  EXPECT_EQ(back[0].sites, (std::vector<std::string>{"a", "c"}));
  EXPECT_TRUE(back[1].feasible);
  EXPECT_EQ(back[1].sites, (std::vector<std::string>{"b"}));
}

TEST(HistoryCsvTest, RoundTrip) {
  const TempDir dir;
  std::vector<ParetoArchive> history(3);
  history[0].generation = 0;
  history[1].generation = 1;
  history[1].members = {{{1}, {1, 2, -0.5}, 0.0}};
  history[2].generation = 2;
  history[2].members = {{{1}, {1, 2, -0.5}, 0.0}, {{1}, {2, 1, -0.75}, 0.0}};
  WriteHistoryCsv(dir.path() / "h.csv", history);
  const HistoryTable t = ReadHistoryCsv(dir.path() / "h.csv");
  ASSERT_EQ(t.generations.size(), t.fronts.size());
  ASSERT_FALSE(t.fronts.empty());
  EXPECT_EQ(t.generations.back(), 2u);
  EXPECT_EQ(t.fronts.back().size(), 2u);
  EXPECT_EQ(t.fronts.back()[1], (std::vector<double>{2, 1, -0.75}));
}

TEST(CalibrationIoTest, WritesAllFilesAndCap) {
  const TempDir dir;
  WorkloadCalibration c;
  c.runs = 3;
  c.included_runs = {0, 2};
  c.fronts.resize(2);
  c.fronts[0].members = {{{1, 0}, {1, 2, 0}, 0.0}};
  c.fronts[1].members = {{{0, 1}, {1, 3, 0}, 0.0}};
  c.solution_workloads = {{8.0}, {10.0}};
  c.run_maxima = {8.0, 10.0};
  c.cap = 9.0;
  const PointSet cands = {{"a", 0, 0}, {"b", 1, 0}};
  WriteCalibration(dir.path(), c, cands);
  EXPECT_DOUBLE_EQ(ReadCalibrationCap(dir.path() / "calibration.json"), 9.0);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "calibration_run_0.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "calibration_run_2.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "calibration_run_1.csv"));
  const CsvTable t = ReadCsv(dir.path() / "calibration.csv");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][t.Column("run")], "2");
  EXPECT_EQ(t.rows[1][t.Column("max_mean_workload")], "10");
  WriteText(dir.path() / "broken.json", "{}");
  EXPECT_THROW(ReadCalibrationCap(dir.path() / "broken.json"), ValidationError);
}

TEST(MacroPlanIoTest, RoundTrip) {
  const TempDir dir;
  MacroProblemSpec s;
  s.demand_points = {{"d1", 0, 0}, {"d2", 3, 0}};
  s.demand = {2, 5};
  s.candidates = {{"a", 3, 0.5}, {"b", 9, 9}};
  s.existing = {{"e", 0, 0.2}};
  s.radius = 1.0;
  s.new_stations = 1;
  const MacroProblem p(s);
  const std::vector<std::size_t> sel = {0};
  const MacroPlan plan = MakeMacroPlan(p, sel);
  WriteJsonFile(MacroPlanToJson(p, plan), dir.path() / "plan.json");
  const MacroPlanFile f = ReadMacroPlan(dir.path() / "plan.json");
  ASSERT_EQ(f.selected.size(), 1u);
  EXPECT_EQ(f.selected[0].id, "a");
  EXPECT_DOUBLE_EQ(f.radius, 1.0);
  EXPECT_DOUBLE_EQ(f.fitness, 7.0);
  EXPECT_TRUE(f.feasible);
  const PointSet anchors = f.Anchors();
  ASSERT_EQ(anchors.size(), 2u);
  EXPECT_EQ(anchors[0].id, "e");
  EXPECT_EQ(anchors[1].id, "a");
}

TEST(GeoJsonTest, PointFeatures) {
  const std::vector<GeoFeature> features = {{{"a", 1.5, 2.0}, {{"kind", "micro"}}}};
  const auto doc = PointsGeoJson(features);
  EXPECT_EQ(doc["type"], "FeatureCollection");
  ASSERT_EQ(doc["features"].size(), 1u);
  const auto& f = doc["features"][0];
  EXPECT_EQ(f["geometry"]["type"], "Point");
  EXPECT_EQ(f["geometry"]["coordinates"][0], 1.5);
  EXPECT_EQ(f["properties"]["kind"], "micro");
  EXPECT_EQ(f["properties"]["id"], "a");
}

TEST(InstanceIoTest, SaveLoadRoundTrip) {
  const TempDir dir;
  const InstanceFile inst = GenerateSynthetic(SynthParams::Tiny(3));
  SaveInstance(inst, dir.path() / "i.json");
  const InstanceFile back = LoadInstance(dir.path() / "i.json");
  EXPECT_EQ(back.ToJson(), inst.ToJson());
  WriteText(dir.path() / "bad.json", R"({"schema_version": 99, "demand_points": []})");
  EXPECT_THROW(LoadInstance(dir.path() / "bad.json"), ValidationError);
  WriteText(dir.path() / "junk.json", "{not json");
  EXPECT_THROW(LoadInstance(dir.path() / "junk.json"), ValidationError);
}

TEST(ConfigIoTest, RoundTripAndManifestForm) {
  RunConfig c;
  c.seed = 77;
  c.workload_cap = 12.5;
  c.micro_ea.population = 40;
  c.metric = Metric::kNetwork;
  const RunConfig back = RunConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  const nlohmann::json manifest = {{"config", c.ToJson()}, {"seed", 77}};
  EXPECT_EQ(RunConfig::FromJson(manifest).ToJson(), c.ToJson());
  const RunConfig partial = RunConfig::FromJson(nlohmann::json{{"seed", 5}});
  EXPECT_EQ(partial.seed, 5u);
  EXPECT_EQ(partial.calibration_runs, 10u);
  EXPECT_THROW(RunConfig::FromJson(nlohmann::json{{"metric", "manhattan"}}), ConfigError);
}

TEST(ConfigIoTest, StageSeedsDiffer) {
  RunConfig c;
  c.seed = 3;
  EXPECT_NE(c.MacroParams().seed, c.CalibrationParams().seed);
  EXPECT_NE(c.CalibrationParams().seed, c.MicroParams().seed);
  EXPECT_EQ(c.MacroParams().seed, DeriveSeed(3, 1));
}

TEST(FingerprintTest, Fnv1a) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(HexDigest(0xabcULL), "0000000000000abc");
}

}  // namespace
}  // namespace firesite

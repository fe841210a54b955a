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

#include <charconv>
#include <fstream>
#include <unordered_map>

#include "firesite/error.h"
#include "firesite/instance.h"

namespace firesite {
namespace {

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

std::vector<std::string> SplitLine(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void CheckId(const std::string& id) {
  if (id.find_first_of(",;\n\r") != std::string::npos) {
    throw ValidationError("id '" + id + "' contains a separator character");
  }
}

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string();
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double ParseNumber(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::size_t CsvTable::Column(std::string_view name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw ValidationError("CSV column '" + std::string(name) + "' missing");
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitLine(line, ',');
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ValidationError("'" + path.string() + "': row has " +
                            std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (first) throw ValidationError("'" + path.string() + "' is empty");
  return table;
}

std::vector<RiskInput> ReadRiskInputsCsv(const std::filesystem::path& path) {
  const CsvTable t = ReadCsv(path);
  const std::size_t id = t.Column("id");
  const std::size_t acc = t.Column("accidents");
  const std::size_t den = t.Column("density");
  std::vector<RiskInput> out;
  for (const auto& row : t.rows) {
    const double accidents = ParseNumber(row[acc]);
    if (accidents != static_cast<double>(static_cast<long>(accidents))) {
      throw ValidationError("accident count must be an integer at '" + row[id] + "'");
    }
    out.push_back({row[id], static_cast<long>(accidents), ParseNumber(row[den])});
  }
  return out;
}

void WriteRiskCsv(const std::filesystem::path& path,
                  std::span<const RiskScore> scores) {
  auto out = OpenForWrite(path);
  out << "id,r_a,r_p,a\n";
  for (const RiskScore& s : scores) {
    CheckId(s.id);
    out << s.id << ',';
    if (s.accident_rank > 0) out << s.accident_rank;
    out << ',';
    if (s.density_rank > 0) out << s.density_rank;
    out << ',' << FormatNumber(s.demand) << '\n';
  }
}

void WriteTraceCsv(const std::filesystem::path& path,
                   std::span<const double> fitness,
                   std::span<const double> violation) {
  auto out = OpenForWrite(path);
  out << "generation,best_fitness,best_violation\n";
  for (std::size_t g = 0; g < fitness.size(); ++g) {
    out << g << ',' << FormatNumber(fitness[g]) << ','
        << FormatNumber(g < violation.size() ? violation[g] : 0.0) << '\n';
  }
}

void WriteMacroPlanCsv(const std::filesystem::path& path,
                       std::span<const MacroPlanRow> rows) {
  auto out = OpenForWrite(path);
  out << "solution,fitness,feasible,sites\n";
  for (const MacroPlanRow& r : rows) {
    out << r.solution << ',' << FormatNumber(r.fitness) << ','
        << (r.feasible ? 1 : 0) << ',' << JoinIds(r.sites) << '\n';
  }
}

nlohmann::json MacroPlanToJson(const MacroProblem& problem,
                               const MacroPlan& plan) {
  const MacroProblemSpec& spec = problem.spec();
  PointSet selected;
  for (std::size_t j : plan.selected) selected.push_back(spec.candidates[j]);
  std::vector<std::string> covered;
  for (std::size_t i : plan.covered) covered.push_back(spec.demand_points[i].id);
  return {
      {"schema_version", kInstanceSchemaVersion},
      {"new_stations", spec.new_stations},
      {"radius", spec.radius},
      {"selected", PointSetToJson(selected)},
      {"existing", PointSetToJson(spec.existing)},
      {"covered", covered},
      {"fitness", plan.total_covered_demand},
      {"violation", plan.violation},
      {"feasible", plan.feasible},
  };
}

PointSet MacroPlanFile::Anchors() const {
  PointSet anchors = existing;
  anchors.insert(anchors.end(), selected.begin(), selected.end());
  return anchors;
}

MacroPlanFile ReadMacroPlan(const std::filesystem::path& path) {
  const nlohmann::json doc = ReadJsonFile(path);
  MacroPlanFile plan;
  try {
    plan.selected = PointSetFromJson(doc.at("selected"));
    plan.existing = PointSetFromJson(doc.at("existing"));
    plan.radius = doc.at("radius").get<double>();
    plan.fitness = doc.at("fitness").get<double>();
    plan.violation = doc.at("violation").get<double>();
    plan.feasible = doc.at("feasible").get<bool>();
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("macro plan: " + std::string(ex.what()));
  }
  return plan;
}

std::vector<ArchiveRow> ArchiveRows(const ParetoArchive& archive,
                                    const PointSet& candidates) {
  std::vector<ArchiveRow> rows;
  for (std::size_t s = 0; s < archive.members.size(); ++s) {
    const auto& m = archive.members[s];
    ArchiveRow row{s, m.objectives, m.feasible(), {}};
    for (std::size_t j : SelectedIndices(m.genes)) row.sites.push_back(candidates[j].id);
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteArchiveCsv(const std::filesystem::path& path,
                     std::span<const ArchiveRow> rows) {
  auto out = OpenForWrite(path);
  out << "solution,F1,F2,F3,feasible,sites\n";
  for (const ArchiveRow& r : rows) {
    out << r.solution;
    for (double v : r.objectives) out << ',' << FormatNumber(v);
    out << ',' << (r.feasible ? 1 : 0) << ',' << JoinIds(r.sites) << '\n';
  }
}

std::vector<ArchiveRow> ReadArchiveCsv(const std::filesystem::path& path) {
  const CsvTable t = ReadCsv(path);
  const std::size_t sol = t.Column("solution");
  const std::size_t f1 = t.Column("F1");
  const std::size_t f2 = t.Column("F2");
  const std::size_t f3 = t.Column("F3");
  const std::size_t feas = t.Column("feasible");
  const std::size_t sites = t.Column("sites");
  std::vector<ArchiveRow> rows;
  for (const auto& r : t.rows) {
    rows.push_back({static_cast<std::size_t>(ParseNumber(r[sol])),
                    {ParseNumber(r[f1]), ParseNumber(r[f2]), ParseNumber(r[f3])},
                    r[feas] == "1",
                    SplitIds(r[sites])});
  }
  return rows;
}

void WriteHistoryCsv(const std::filesystem::path& path,
                     std::span<const ParetoArchive> history) {
  auto out = OpenForWrite(path);
  out << "generation,solution,F1,F2,F3\n";
  for (const ParetoArchive& archive : history) {
    for (std::size_t s = 0; s < archive.members.size(); ++s) {
      out << archive.generation << ',' << s;
      for (double v : archive.members[s].objectives) out << ',' << FormatNumber(v);
      out << '\n';
    }
  }
}

HistoryTable ReadHistoryCsv(const std::filesystem::path& path) {
  const CsvTable t = ReadCsv(path);
  const std::size_t gen = t.Column("generation");
  const std::size_t f1 = t.Column("F1");
  const std::size_t f2 = t.Column("F2");
  const std::size_t f3 = t.Column("F3");
  HistoryTable history;
  for (const auto& r : t.rows) {
    const auto g = static_cast<std::size_t>(ParseNumber(r[gen]));
    if (history.generations.empty() || history.generations.back() != g) {
      history.generations.push_back(g);
      history.fronts.emplace_back();
    }
    history.fronts.back().push_back(
        {ParseNumber(r[f1]), ParseNumber(r[f2]), ParseNumber(r[f3])});
  }
  return history;
}

void WriteIndicatorCsv(const std::filesystem::path& path,
                       std::span<const IndicatorRow> rows) {
  auto out = OpenForWrite(path);
  out << "generation,size,hv_nadir,hv_fixed,spacing\n";
  for (const IndicatorRow& r : rows) {
    out << r.generation << ',' << r.size << ',' << FormatNumber(r.hv_nadir) << ','
        << FormatNumber(r.hv_fixed) << ',' << OptionalNumber(r.spacing) << '\n';
  }
}

void WriteCalibration(const std::filesystem::path& dir,
                      const WorkloadCalibration& calibration,
                      const PointSet& candidates) {
  nlohmann::json doc = {
      {"cap", calibration.cap},
      {"runs", calibration.runs},
      {"included_runs", calibration.included_runs},
      {"run_maxima", calibration.run_maxima},
  };
  WriteJsonFile(doc, dir / "calibration.json");
  auto out = OpenForWrite(dir / "calibration.csv");
  out << "run,solutions,max_mean_workload\n";
  for (std::size_t k = 0; k < calibration.included_runs.size(); ++k) {
    const std::size_t run = calibration.included_runs[k];
    out << run << ',' << calibration.fronts[k].members.size() << ','
        << FormatNumber(calibration.run_maxima[k]) << '\n';
    WriteArchiveCsv(dir / ("calibration_run_" + std::to_string(run) + ".csv"),
                    ArchiveRows(calibration.fronts[k], candidates));
  }
}

double ReadCalibrationCap(const std::filesystem::path& path) {
  const nlohmann::json doc = ReadJsonFile(path);
  try {
    return doc.at("cap").get<double>();
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("calibration: " + std::string(ex.what()));
  }
}

nlohmann::json PointsGeoJson(std::span<const GeoFeature> features) {
  nlohmann::json doc = {
      {"type", "FeatureCollection"},
      {"crs", {{"type", "name"}, {"properties", {{"name", "planar-km"}}}}},
      {"features", nlohmann::json::array()},
  };
  for (const GeoFeature& f : features) {
    nlohmann::json props = f.properties.is_null() ? nlohmann::json::object()
                                                  : f.properties;
    props["id"] = f.location.id;
    doc["features"].push_back(
        {{"type", "Feature"},
         {"geometry",
          {{"type", "Point"}, {"coordinates", {f.location.x, f.location.y}}}},
         {"properties", props}});
  }
  return doc;
}

std::string JoinIds(std::span<const std::string> ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    CheckId(ids[k]);
    if (k > 0) out += ';';
    out += ids[k];
  }
  return out;
}

std::vector<std::string> SplitIds(std::string_view joined) {
  if (joined.empty()) return {};
  return SplitLine(joined, ';');
}

std::vector<std::size_t> IndicesOfIds(const PointSet& candidates,
                                      std::span<const std::string> ids) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < candidates.size(); ++j) index.emplace(candidates[j].id, j);
  std::vector<std::size_t> out;
  for (const std::string& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw ValidationError("unknown site id '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace firesite

// Copyright 2026 The osod-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "json.hpp"
#include "osod/dataset/io.hpp"
#include "osod/error.hpp"
#include "osod/report/aggregate.hpp"
#include "osod/report/manifest.hpp"
#include "osod/report/run_eval.hpp"

namespace osod {
namespace {

namespace fs = std::filesystem;

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("osod_report_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int CountLines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

TEST(FormatOneDecimalTest, Examples) {
  EXPECT_EQ(FormatOneDecimal(37.55), "37.6");
  EXPECT_EQ(FormatOneDecimal(37.549), "37.5");
  EXPECT_EQ(FormatOneDecimal(-0.25), "-0.3");
  EXPECT_EQ(FormatOneDecimal(0.0), "0.0");
  EXPECT_EQ(FormatOneDecimal(100.0), "100.0");
  EXPECT_EQ(FormatOneDecimal(2.05), "2.1");
  EXPECT_EQ(FormatOneDecimal(9.96), "10.0");
}

TEST(MeanStdTest, Population) {
  const std::vector<double> v = {40.4, 34.8, 40.4, 34.8};
  const auto ms = PopulationMeanStd(v);
  ASSERT_TRUE(ms);
  EXPECT_NEAR(ms->mean, 37.6, 1e-12);
  EXPECT_NEAR(ms->std, 2.8, 1e-12);
  EXPECT_FALSE(PopulationMeanStd({}));
  const std::vector<double> one = {5.0};
  EXPECT_EQ(PopulationMeanStd(one)->std, 0.0);
}

std::vector<SplitScores> FourSplits() {
  return {{"a", 40.4, 10.0}, {"b", 34.8, 12.0}, {"c", 40.4, 14.0}, {"d", 34.8, 16.0}};
}

TEST(RenderTableTest, MarkdownMeanCell) {
  const std::vector<AggregateRow> rows = {MakeAggregateRow("ours", FourSplits())};
  const std::string md = RenderTable(rows, TableFormat::kMarkdown);
  EXPECT_NE(md.find("37.6±2.8"), std::string::npos) << md;
  EXPECT_NE(md.find("| ours | 40.4 | 10.0 |"), std::string::npos) << md;
  EXPECT_EQ(CountLines(md), 3);
}

TEST(RenderTableTest, EmptyRowsGiveHeaderOnly) {
  const std::string md = RenderTable({}, TableFormat::kMarkdown);
  EXPECT_EQ(CountLines(md), 2);
  EXPECT_EQ(CountLines(RenderTable({}, TableFormat::kCsv)), 1);
  EXPECT_EQ(nlohmann::json::parse(RenderTable({}, TableFormat::kJson)).size(), 0u);
}

TEST(RenderTableTest, AbsentValues) {
  const std::vector<AggregateRow> rows = {
      MakeAggregateRow("m", {{"a", 50.0, std::nullopt}, {"b", 30.0, std::nullopt}})};
  const std::string md = RenderTable(rows, TableFormat::kMarkdown);
  EXPECT_NE(md.find("| m | 50.0 | - | 30.0 | - | 40.0±10.0 | - |"), std::string::npos)
      << md;
  const std::string csv = RenderTable(rows, TableFormat::kCsv);
  EXPECT_NE(csv.find("m,50,,30,,40,10,,\n"), std::string::npos) << csv;
}

TEST(RenderTableTest, CsvAndJsonKeepPrecision) {
  const std::vector<AggregateRow> rows = {
      MakeAggregateRow("m", {{"a", 12.345678, 1.0 / 3.0}})};
  const std::string csv = RenderTable(rows, TableFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "method,a_ap_known,a_ap_unk,mean_ap_known,std_ap_known,mean_ap_unk,std_ap_unk");
  EXPECT_NE(csv.find("12.345678"), std::string::npos);
  const auto j = nlohmann::json::parse(RenderTable(rows, TableFormat::kJson));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["method"], "m");
  EXPECT_NE(j.dump().find("12.345678"), std::string::npos);
}

TEST(RenderTableTest, MismatchedSplitsRejected) {
  const std::vector<AggregateRow> rows = {MakeAggregateRow("x", {{"a", 1.0, 1.0}}),
                                          MakeAggregateRow("y", {{"b", 1.0, 1.0}})};
  EXPECT_THROW(RenderTable(rows, TableFormat::kMarkdown), ConfigError);
}

TEST(TableFormatTest, Parse) {
  EXPECT_EQ(ParseTableFormat("md"), TableFormat::kMarkdown);
  EXPECT_EQ(ParseTableFormat("csv"), TableFormat::kCsv);
  EXPECT_EQ(ParseTableFormat("json"), TableFormat::kJson);
  EXPECT_THROW(ParseTableFormat("xlsx"), ConfigError);
}

TEST(ManifestTest, ParsesTemplatesAndResolvesPaths) {
  const RunManifest m = ParseManifest(R"({
    "dataset": "gt.json",
    "splits": [{"name": "s1", "path": "/abs/s1.json"}],
    "methods": [
      {"name": "a", "detections": "dets/{split}.json"},
      {"name": "b", "kind": "raw", "detections": {"s1": "b.json"},
       "baseline": {"gamma": 2.5, "cross_nms": 0.6}}
    ],
    "eval": {"wi_recall_target": 0.7}
  })", "/base");
  EXPECT_EQ(m.dataset, fs::path("/base/gt.json"));
  EXPECT_EQ(m.splits[0].path, fs::path("/abs/s1.json"));
  EXPECT_EQ(m.methods[0].DetectionsFor("s1"), fs::path("/base/dets/s1.json"));
  EXPECT_EQ(m.methods[1].kind, MethodKind::kRaw);
  EXPECT_EQ(m.methods[1].baseline.gamma, 2.5);
  EXPECT_EQ(*m.methods[1].cross_nms_iou, 0.6);
  EXPECT_EQ(m.eval.wi_recall_target, 0.7);
  EXPECT_THROW(m.methods[1].DetectionsFor("s2"), ConfigError);
}

TEST(ManifestTest, Errors) {
  const auto parse = [](const std::string& text) { ParseManifest(text, "/"); };
  EXPECT_THROW(parse("{"), ParseError);
  EXPECT_THROW(parse(R"({"dataset": "d", "splits": [], "methods": []})"), ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "splits": [{"name": "s", "path": "p"},
                          {"name": "s", "path": "q"}],
                          "methods": [{"name": "m", "detections": "x"}]})"),
               ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "splits": [{"name": "a__b", "path": "p"}],
                          "methods": [{"name": "m", "detections": "x"}]})"),
               ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "splits": [{"name": "s", "path": "p"}],
                          "methods": [{"name": "m/n", "detections": "x"}]})"),
               ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "splits": [{"name": "s", "path": "p"}],
                          "methods": [{"name": "m", "detections": "x",
                                       "baseline": {"gama": 2}}]})"),
               ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "splits": [{"name": "s", "path": "p"}],
                          "methods": [{"name": "m", "detections": "x"}],
                          "eval": {"iou": 0.5}})"),
               ConfigError);
}

TEST(RunEvalTest, FixtureManifest) {
  RunManifest m = LoadManifest(fs::path(OSOD_FIXTURES) / "e2e" / "manifest.json");
  const fs::path out = FreshDir("fixture");
  const RunResult r = RunEval(m, {.threads = 2, .output_dir = out});
  EXPECT_TRUE(r.errors.empty());
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].method, "labeled");
  EXPECT_EQ(r.rows[0].splits.size(), 3u);
  EXPECT_TRUE(fs::exists(out / "reports" / "ratio__s2.json"));
  EXPECT_TRUE(fs::exists(out / "sweeps" / "labeled__s3.csv"));
  EXPECT_TRUE(fs::exists(out / "table_animal.md"));
  EXPECT_EQ(r.written.size(), 13u);
  EXPECT_EQ(ReadFile(out / "table_animal.md"), r.table);
  EXPECT_EQ(CountLines(r.table), 4);

  // Report values agree with the table row.
  const auto j = nlohmann::json::parse(ReadFile(out / "reports" / "labeled__s1.json"));
  EXPECT_NEAR(j["map_known"].get<double>() * 100.0, *r.rows[0].splits[0].ap_known, 1e-9);
}

TEST(RunEvalTest, MissingDetectionsIsCellError) {
  RunManifest m = LoadManifest(fs::path(OSOD_FIXTURES) / "e2e" / "manifest.json");
  m.methods[0].detections_template.clear();
  m.methods[0].detections = {{"s1", "/nonexistent/dets.json"},
                             {"s2", m.methods[1].DetectionsFor("s2")},
                             {"s3", m.methods[1].DetectionsFor("s3")}};
  const fs::path out = FreshDir("missing");
  const RunResult r = RunEval(m, {.output_dir = out});
  // s1 cannot be read; s2 and s3 are raw files given as labeled.
  ASSERT_EQ(r.errors.size(), 3u);
  EXPECT_EQ(r.errors[0].kind, ErrorKind::kIo);
  EXPECT_NE(r.errors[0].message.find("/nonexistent/dets.json"), std::string::npos);
  EXPECT_EQ(r.errors[1].kind, ErrorKind::kSchema);
  EXPECT_TRUE(r.table.empty());
  EXPECT_FALSE(fs::exists(out / "table_animal.md"));
}

TEST(ExportSweepTest, LineCountAndEmpty) {
  const fs::path out = FreshDir("sweep");
  std::vector<OperatingPointStats> stats(21);
  for (int i = 0; i < 21; ++i) stats[i].conf_threshold = i / 20.0;
  ExportSweep(stats, out / "s.csv");
  EXPECT_EQ(CountLines(ReadFile(out / "s.csv")), 22);
  EXPECT_THROW(ExportSweep({}, out / "e.csv"), ConfigError);
}

}  // namespace
}  // namespace osod

// Copyright 2026 The speechveil Authors.
//
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

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "golden.h"
#include "speechveil/core/errors.h"
#include "speechveil/pipeline/session.h"
#include "speechveil/report/tables.h"

namespace speechveil {
namespace {

using testing::ExpectMatchesGolden;

EvalReport WithWer(double wer, std::optional<double> pmos = std::nullopt) {
  EvalReport report;
  report.wer = wer;
  report.pmos_mean = pmos;
  return report;
}

std::vector<LabeledReport> AccentFixture() {
  const AblationResult result = AblationResult::Load(
      std::filesystem::path(SPEECHVEIL_FIXTURE_DIR) / "accent_ablation.json");
  std::vector<LabeledReport> reports;
  for (const AblationRow& row : result.rows) {
    reports.push_back({row.subcategory, row.report});
  }
  return reports;
}

TableSpec WerOnly() {
  TableSpec spec;
  spec.name = "t";
  spec.columns = {Metric::kWer};
  return spec;
}

TEST(MetricTest, ParsesNamesCaseInsensitively) {
  EXPECT_EQ(ParseMetric("wer"), Metric::kWer);
  EXPECT_EQ(ParseMetric("PMOS"), Metric::kPmos);
  EXPECT_EQ(ParseMetric("replacc"), Metric::kReplAcc);
  EXPECT_THROW(ParseMetric("bleu"), ValidationError);
}

TEST(MetricTest, PercentScaling) {
  EvalReport report = WithWer(0.1234, 4.2);
  EXPECT_DOUBLE_EQ(*DisplayValue(report, Metric::kWer), 12.34);
  EXPECT_DOUBLE_EQ(*DisplayValue(report, Metric::kPmos), 4.2);
  EXPECT_FALSE(DisplayValue(report, Metric::kFar).has_value());
}

TEST(BuildTableTest, IntensityEndpoints) {
  const Table table = BuildTable({{"A", WithWer(0.10)}, {"B", WithWer(0.20)}}, WerOnly());
  ASSERT_EQ(table.cells.size(), 2u);
  EXPECT_DOUBLE_EQ(*table.cells[0][0].intensity, 0.0);
  EXPECT_DOUBLE_EQ(*table.cells[1][0].intensity, 1.0);
  EXPECT_DOUBLE_EQ(*table.cells[1][0].value, 20.0);
}

TEST(BuildTableTest, IntensityIsMinMaxNormalized) {
  const Table table = BuildTable(
      {{"A", WithWer(0.10)}, {"B", WithWer(0.40)}, {"C", WithWer(0.20)}}, WerOnly());
  EXPECT_NEAR(*table.cells[2][0].intensity, 1.0 / 3.0, 1e-12);
}

TEST(BuildTableTest, SingleRowHasZeroIntensity) {
  const Table table = BuildTable({{"A", WithWer(0.3)}}, WerOnly());
  EXPECT_DOUBLE_EQ(*table.cells[0][0].intensity, 0.0);
}

TEST(BuildTableTest, MissingRowRendersNaAndWarns) {
  TableSpec spec = WerOnly();
  spec.rows = {"A", "B"};
  const Table table = BuildTable({{"A", WithWer(0.1)}}, spec);
  ASSERT_EQ(table.cells.size(), 2u);
  EXPECT_FALSE(table.cells[1][0].value.has_value());
  ASSERT_FALSE(table.warnings.empty());
  EXPECT_NE(table.warnings[0].find("B"), std::string::npos);
  EXPECT_NE(ToMarkdown(table).find("n/a"), std::string::npos);
  EXPECT_NE(ToCsv(table).find("B,n/a"), std::string::npos);
}

TEST(BuildTableTest, SortByPutsMissingLast) {
  TableSpec spec = WerOnly();
  spec.sort_by = Metric::kWer;
  spec.rows = {"A", "B", "C"};
  const Table table =
      BuildTable({{"A", WithWer(0.3)}, {"C", WithWer(0.1)}}, spec);
  EXPECT_EQ(table.labels, (std::vector<std::string>{"C", "A", "B"}));
}

TEST(AccentTableTest, SpecListsEveryAccent) {
  const TableSpec spec = AccentsTableSpec();
  EXPECT_EQ(spec.rows.size(), 38u);
  EXPECT_EQ(spec.columns, (std::vector<Metric>{Metric::kWer, Metric::kPmos}));
}

TEST(AccentTableTest, MarkdownMatchesGolden) {
  const Table table = BuildTable(AccentFixture(), AccentsTableSpec());
  EXPECT_TRUE(table.warnings.empty());
  ExpectMatchesGolden("report/accents.md", ToMarkdown(table));
}

TEST(AccentTableTest, CsvMatchesGolden) {
  const Table table = BuildTable(AccentFixture(), AccentsTableSpec());
  ExpectMatchesGolden("report/accents.csv", ToCsv(table));
}

TEST(AccentTableTest, CsvParsesBack) {
  const std::vector<LabeledReport> reports = AccentFixture();
  const Table table = BuildTable(reports, AccentsTableSpec());
  std::istringstream in(ToCsv(table));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "Subcategory,WER,WER_intensity,PMOS,PMOS_intensity");
  std::size_t n = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    ASSERT_EQ(fields.size(), 5u) << line;
    const auto it = std::find_if(reports.begin(), reports.end(),
                                 [&](const LabeledReport& r) { return r.label == fields[0]; });
    ASSERT_NE(it, reports.end());
    EXPECT_NEAR(std::stod(fields[1]), *it->report.wer * 100.0, 0.005);
    EXPECT_NEAR(std::stod(fields[3]), *it->report.pmos_mean, 0.005);
    const double intensity = std::stod(fields[2]);
    EXPECT_GE(intensity, 0.0);
    EXPECT_LE(intensity, 1.0);
    ++n;
  }
  EXPECT_EQ(n, 38u);
}

TEST(SeriesTest, AccentWerAscending) {
  const std::vector<SeriesPoint> series = SortedSeries(AccentFixture(), Metric::kWer);
  ASSERT_EQ(series.size(), 38u);
  EXPECT_EQ(series.front().label, "Slovak");
  EXPECT_NEAR(series.front().value, 12.07, 1e-9);
  for (std::size_t i = 1; i < series.size(); ++i) {
    EXPECT_LE(series[i - 1].value, series[i].value);
  }
  ExpectMatchesGolden("report/accents_wer_series.csv", SeriesToCsv(series, Metric::kWer));
  ExpectMatchesGolden("report/accents_wer_series.svg", SeriesToSvg(series, Metric::kWer));
}

TEST(SeriesTest, AccentPmosMatchesGolden) {
  const std::vector<SeriesPoint> series = SortedSeries(AccentFixture(), Metric::kPmos);
  ExpectMatchesGolden("report/accents_pmos_series.csv", SeriesToCsv(series, Metric::kPmos));
}

TEST(SeriesTest, TiesBrokenByLabelRegardlessOfInputOrder) {
  std::vector<LabeledReport> reports = {
      {"b", WithWer(0.2)}, {"a", WithWer(0.2)}, {"c", WithWer(0.1)}};
  const std::vector<SeriesPoint> forward = SortedSeries(reports, Metric::kWer);
  std::reverse(reports.begin(), reports.end());
  const std::vector<SeriesPoint> backward = SortedSeries(reports, Metric::kWer);
  ASSERT_EQ(forward.size(), 3u);
  EXPECT_EQ(forward[0].label, "c");
  EXPECT_EQ(forward[1].label, "a");
  EXPECT_EQ(forward[2].label, "b");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(forward[i].label, backward[i].label);
}

TEST(SeriesTest, MissingValuesDroppedWithWarning) {
  std::vector<std::string> warnings;
  const std::vector<SeriesPoint> series = SortedSeries(
      {{"a", WithWer(0.2)}, {"b", EvalReport{}}}, Metric::kWer, &warnings);
  EXPECT_EQ(series.size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(SeriesTest, RejectsNonRankableMetric) {
  EXPECT_THROW(SortedSeries(AccentFixture(), Metric::kFar), ValidationError);
}

TEST(SystemsTableTest, MatchesGolden) {
  EvalReport original;
  original.far = 1.0;
  original.wer = 0.05;
  original.pmos_mean = 4.5;
  EvalReport anonymized;
  anonymized.far = 0.0;
  anonymized.wer = 0.0825;
  anonymized.pmos_mean = 4.21;
  const Table table = BuildTable({{"original", original}, {"speechveil", anonymized}},
                                 SystemsTableSpec({"original", "speechveil"}));
  ExpectMatchesGolden("report/systems.md", ToMarkdown(table));
  ExpectMatchesGolden("report/systems.csv", ToCsv(table));
}

}  // namespace
}  // namespace speechveil

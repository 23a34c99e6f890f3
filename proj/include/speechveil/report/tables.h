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

#ifndef SPEECHVEIL_REPORT_TABLES_H_
#define SPEECHVEIL_REPORT_TABLES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speechveil/metrics/eval_report.h"

namespace speechveil {

enum class Metric { kFar, kWer, kPmos, kF1, kReplAcc };

std::string_view ToString(Metric metric);
// Case-insensitive.
Metric ParseMetric(std::string_view name);
// FAR, WER, F1 and ReplAcc render as percentages.
bool IsPercent(Metric metric);
// The number shown in tables: percent metrics scaled by 100.
std::optional<double> DisplayValue(const EvalReport& report, Metric metric);

struct TableSpec {
  std::string name;
  std::string row_header = "Subcategory";
  // Expected rows in display order. Empty means input order.
  std::vector<std::string> rows;
  std::vector<Metric> columns;
  // Ascending; rows without a value go last, ties by label.
  std::optional<Metric> sort_by;
};

// Presets: "systems" (FAR, WER, PMOS over the given runs), "accents" (the 38
// accent subcategories, WER and PMOS) and "attributes" (every subcategory of
// the other five attributes, labelled "<attribute>/<value>").
TableSpec SystemsTableSpec(std::vector<std::string> systems);
TableSpec AccentsTableSpec();
TableSpec AttributesTableSpec();

struct LabeledReport {
  std::string label;
  EvalReport report;
};

struct TableCell {
  std::optional<double> value;
  // Min-max normalized within the column; 0 when the column is flat.
  std::optional<double> intensity;
};

struct Table {
  TableSpec spec;
  std::vector<std::string> labels;
  std::vector<std::vector<TableCell>> cells;  // [row][column]
  std::vector<std::string> warnings;
};

Table BuildTable(const std::vector<LabeledReport>& reports, const TableSpec& spec);

// Cells read "16.00 (0.31)": value, then intensity.
std::string ToMarkdown(const Table& table);
// Header "<row_header>,WER,WER_intensity,...". Values carry two decimals and
// intensities four.
std::string ToCsv(const Table& table);

struct SeriesPoint {
  std::string label;
  double value = 0.0;  // display units
};

// Ascending by value, ties by label. Rows without the metric are dropped
// and reported in `warnings` when given.
std::vector<SeriesPoint> SortedSeries(const std::vector<LabeledReport>& reports,
                                      Metric metric,
                                      std::vector<std::string>* warnings = nullptr);
std::string SeriesToCsv(const std::vector<SeriesPoint>& series, Metric metric);
std::string SeriesToSvg(const std::vector<SeriesPoint>& series, Metric metric);

}  // namespace speechveil

#endif  // SPEECHVEIL_REPORT_TABLES_H_

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

#include "speechveil/report/tables.h"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"
#include "speechveil/speaker/attributes.h"

namespace speechveil {

std::string_view ToString(Metric metric) {
  switch (metric) {
    case Metric::kFar: return "FAR";
    case Metric::kWer: return "WER";
    case Metric::kPmos: return "PMOS";
    case Metric::kF1: return "F1";
    case Metric::kReplAcc: return "ReplAcc";
  }
  return "FAR";
}

Metric ParseMetric(std::string_view name) {
  const std::string key = ToLowerAscii(name);
  for (Metric m : {Metric::kFar, Metric::kWer, Metric::kPmos, Metric::kF1,
                   Metric::kReplAcc}) {
    if (ToLowerAscii(ToString(m)) == key) return m;
  }
  throw ValidationError(fmt::format("unknown metric '{}'", name));
}

bool IsPercent(Metric metric) { return metric != Metric::kPmos; }

std::optional<double> DisplayValue(const EvalReport& report, Metric metric) {
  std::optional<double> raw;
  switch (metric) {
    case Metric::kFar: raw = report.far; break;
    case Metric::kWer: raw = report.wer; break;
    case Metric::kPmos: raw = report.pmos_mean; break;
    case Metric::kF1: raw = report.ner_f1; break;
    case Metric::kReplAcc: raw = report.replacement_accuracy; break;
  }
  if (raw && IsPercent(metric)) *raw *= 100.0;
  return raw;
}

TableSpec SystemsTableSpec(std::vector<std::string> systems) {
  return {"systems", "System", std::move(systems),
          {Metric::kFar, Metric::kWer, Metric::kPmos}, std::nullopt};
}

TableSpec AccentsTableSpec() {
  return {"accents", "Subcategory", Vocabulary(Attribute::kAccent),
          {Metric::kWer, Metric::kPmos}, std::nullopt};
}

TableSpec AttributesTableSpec() {
  TableSpec spec{"attributes", "Subcategory", {}, {Metric::kWer, Metric::kPmos},
                 std::nullopt};
  for (Attribute a : kAllAttributes) {
    if (a == Attribute::kAccent) continue;
    for (const std::string& v : Vocabulary(a)) {
      spec.rows.push_back(fmt::format("{}/{}", ToString(a), v));
    }
  }
  return spec;
}

Table BuildTable(const std::vector<LabeledReport>& reports, const TableSpec& spec) {
  Table table;
  table.spec = spec;
  std::map<std::string, const EvalReport*> by_label;
  std::vector<std::string> input_order;
  for (const LabeledReport& r : reports) {
    if (!by_label.emplace(r.label, &r.report).second) {
      table.warnings.push_back(fmt::format("duplicate row '{}' ignored", r.label));
    } else {
      input_order.push_back(r.label);
    }
  }
  table.labels = spec.rows.empty() ? input_order : spec.rows;
  if (!spec.rows.empty()) {
    for (const std::string& label : input_order) {
      if (std::find(spec.rows.begin(), spec.rows.end(), label) == spec.rows.end()) {
        table.warnings.push_back(
            fmt::format("row '{}' is not part of table {}", label, spec.name));
      }
    }
  }
  for (const std::string& label : table.labels) {
    const auto it = by_label.find(label);
    if (it == by_label.end()) {
      table.warnings.push_back(fmt::format("missing row '{}'", label));
    }
    std::vector<TableCell> row;
    for (Metric m : spec.columns) {
      TableCell cell;
      if (it != by_label.end()) {
        cell.value = DisplayValue(*it->second, m);
        if (!cell.value) {
          table.warnings.push_back(
              fmt::format("row '{}' has no {} value", label, ToString(m)));
        }
      }
      row.push_back(cell);
    }
    table.cells.push_back(std::move(row));
  }

  for (std::size_t c = 0; c < spec.columns.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : table.cells) {
      if (row[c].value) {
        lo = std::min(lo, *row[c].value);
        hi = std::max(hi, *row[c].value);
      }
    }
    for (auto& row : table.cells) {
      if (row[c].value) {
        row[c].intensity = hi > lo ? (*row[c].value - lo) / (hi - lo) : 0.0;
      }
    }
  }

  if (spec.sort_by) {
    const auto col = std::find(spec.columns.begin(), spec.columns.end(), *spec.sort_by);
    if (col == spec.columns.end()) {
      throw ValidationError(fmt::format("sort column {} is not in table {}",
                                        ToString(*spec.sort_by), spec.name));
    }
    const std::size_t c = static_cast<std::size_t>(col - spec.columns.begin());
    std::vector<std::size_t> order(table.labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& va = table.cells[a][c].value;
      const auto& vb = table.cells[b][c].value;
      if (va.has_value() != vb.has_value()) return va.has_value();
      if (va && *va != *vb) return *va < *vb;
      return table.labels[a] < table.labels[b];
    });
    Table sorted = table;
    for (std::size_t i = 0; i < order.size(); ++i) {
      sorted.labels[i] = table.labels[order[i]];
      sorted.cells[i] = table.cells[order[i]];
    }
    table = std::move(sorted);
  }
  return table;
}

namespace {

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownText(const std::string& value) {
  std::string out;
  for (char c : value) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string XmlText(const std::string& value) {
  std::string out;
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string ToMarkdown(const Table& table) {
  std::string out = "| " + MarkdownText(table.spec.row_header) + " |";
  std::string rule = "|---|";
  for (Metric m : table.spec.columns) {
    out += fmt::format(" {}{} |", ToString(m), IsPercent(m) ? " (%)" : "");
    rule += "---:|";
  }
  out += "\n" + rule + "\n";
  for (std::size_t r = 0; r < table.labels.size(); ++r) {
    out += "| " + MarkdownText(table.labels[r]) + " |";
    for (const TableCell& cell : table.cells[r]) {
      if (cell.value) {
        out += fmt::format(" {:.2f} ({:.2f}) |", *cell.value, *cell.intensity);
      } else {
        out += " n/a |";
      }
    }
    out += "\n";
  }
  return out;
}

std::string ToCsv(const Table& table) {
  std::string out = CsvField(table.spec.row_header);
  for (Metric m : table.spec.columns) {
    out += fmt::format(",{0},{0}_intensity", ToString(m));
  }
  out += "\n";
  for (std::size_t r = 0; r < table.labels.size(); ++r) {
    out += CsvField(table.labels[r]);
    for (const TableCell& cell : table.cells[r]) {
      if (cell.value) {
        out += fmt::format(",{:.2f},{:.4f}", *cell.value, *cell.intensity);
      } else {
        out += ",n/a,n/a";
      }
    }
    out += "\n";
  }
  return out;
}

std::vector<SeriesPoint> SortedSeries(const std::vector<LabeledReport>& reports,
                                      Metric metric,
                                      std::vector<std::string>* warnings) {
  if (metric != Metric::kWer && metric != Metric::kPmos) {
    throw ValidationError("sorted series support WER and PMOS only");
  }
  std::vector<SeriesPoint> series;
  for (const LabeledReport& r : reports) {
    const auto value = DisplayValue(r.report, metric);
    if (value) {
      series.push_back({r.label, *value});
    } else if (warnings) {
      warnings->push_back(fmt::format("row '{}' has no {} value", r.label, ToString(metric)));
    }
  }
  std::sort(series.begin(), series.end(), [](const SeriesPoint& a, const SeriesPoint& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.label < b.label;
  });
  return series;
}

std::string SeriesToCsv(const std::vector<SeriesPoint>& series, Metric metric) {
  std::string out = fmt::format("rank,label,{}\n", ToString(metric));
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += fmt::format("{},{},{:.2f}\n", i + 1, CsvField(series[i].label), series[i].value);
  }
  return out;
}

std::string SeriesToSvg(const std::vector<SeriesPoint>& series, Metric metric) {
  constexpr double kLabelWidth = 160;
  constexpr double kBarWidth = 480;
  constexpr double kRowHeight = 20;
  constexpr double kTop = 30;
  double peak = 0;
  for (const SeriesPoint& p : series) peak = std::max(peak, p.value);
  const double height = kTop + kRowHeight * static_cast<double>(series.size()) + 10;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<text x=\"10\" y=\"18\" font-weight=\"bold\">Sorted {}{}</text>\n",
      height, ToString(metric), IsPercent(metric) ? " (%)" : "");
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + kRowHeight * static_cast<double>(i);
    const double w = peak > 0 ? kBarWidth * series[i].value / peak : 0;
    out += fmt::format(
        "<text x=\"{:.0f}\" y=\"{:.0f}\" text-anchor=\"end\">{}</text>"
        "<rect x=\"{:.0f}\" y=\"{:.0f}\" width=\"{:.2f}\" height=\"14\" fill=\"#777\"/>"
        "<text x=\"{:.2f}\" y=\"{:.0f}\">{:.2f}</text>\n",
        kLabelWidth - 6, y + 11, XmlText(series[i].label), kLabelWidth, y, w,
        kLabelWidth + w + 4, y + 11, series[i].value);
  }
  return out + "</svg>\n";
}

}  // namespace speechveil

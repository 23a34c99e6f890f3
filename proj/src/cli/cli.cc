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

#include "speechveil/cli/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "speechveil/backend/audio.h"
#include "speechveil/backend/mock_service.h"
#include "speechveil/core/dataset.h"
#include "speechveil/core/errors.h"
#include "speechveil/pipeline/record.h"
#include "speechveil/pipeline/run_config.h"
#include "speechveil/pipeline/session.h"
#include "speechveil/report/tables.h"

namespace speechveil {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string endpoints;
  std::string manifest;
  std::string out;
  std::string output;
  std::string attribute;
  std::string table;
  std::string format = "md";
  std::string series;
  std::string input;
  std::string host = "127.0.0.1";
  std::string log_level = "warn";
  std::vector<std::string> runs;
  std::optional<std::uint64_t> seed;
  std::size_t min_utts = 10;
  bool fixpoint = false;
  int port = 8080;
};

void UseStderrLogging(const std::string& level) {
  static auto logger = spdlog::stderr_logger_mt("speechveil");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(level));
}

// Config file (or defaults), then flags, then environment.
RunConfig ResolveConfig(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::Load(o.config);
  if (!o.manifest.empty()) cfg.manifest = fs::absolute(o.manifest).lexically_normal();
  if (!o.endpoints.empty()) cfg.endpoints = EndpointSet::Load(o.endpoints);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (const char* seed = std::getenv("SPEECHVEIL_SEED"); seed && !o.seed) {
    try {
      cfg.seed = std::stoull(seed);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("SPEECHVEIL_SEED '{}' is not an integer", seed));
    }
  }
  cfg.endpoints.ApplyEnvironment();
  cfg.ValidateFiles();
  if (cfg.output_dir.empty()) throw ConfigError("no output directory; pass --out");
  return cfg;
}

void Emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
  } else {
    WriteBinaryFile(o.output, text);
  }
}

int FilterDatasetCommand(const Options& o, std::ostream& out) {
  if (o.manifest.empty()) throw ConfigError("filter-dataset needs --manifest");
  if (o.min_utts < 1) throw ConfigError("--min-utts must be at least 1");
  const DatasetManifest manifest = ReadManifest(o.manifest);
  const FilterResult result = FilterDataset(manifest, {o.min_utts, o.fixpoint});
  if (!o.out.empty()) {
    std::ostringstream buffer;
    WriteManifest(result.manifest, buffer);
    WriteBinaryFile(o.out, buffer.str());
  }
  out << nlohmann::json{{"input_speakers", result.input_speakers},
                        {"input_utterances", result.input_utterances},
                        {"duplicates_removed", result.duplicates_removed},
                        {"speakers_dropped", result.speakers_dropped},
                        {"speakers", result.speaker_count},
                        {"utterances", result.utterance_count},
                        {"fixpoint", o.fixpoint}}
             .dump()
      << "\n";
  return kExitOk;
}

int AnonymizeCommand(const Options& o, std::ostream& out) {
  const RunConfig cfg = ResolveConfig(o);
  PipelineSession session(cfg, LoadRunManifest(cfg));
  const auto records = session.Anonymize(cfg.output_dir);
  WriteFrozenConfig(cfg.output_dir, cfg);
  WriteRecords(records, cfg.output_dir / "records.jsonl");
  WriteTimings(records, cfg.output_dir / "timings.jsonl");
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.ok() ? 0 : 1;
  out << nlohmann::json{{"run_dir", cfg.output_dir.generic_string()},
                        {"records", records.size()},
                        {"failed", failed}}
             .dump()
      << "\n";
  return kExitOk;
}

int EvaluateCommand(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("evaluate needs --out <run directory>");
  const fs::path run_dir = o.out;
  const fs::path records_path = run_dir / "records.jsonl";
  if (!fs::exists(records_path)) {
    throw ConfigError(fmt::format("missing {}", records_path.string()));
  }
  Options resolved = o;
  if (resolved.config.empty()) resolved.config = (run_dir / "config.json").string();
  const RunConfig cfg = ResolveConfig(resolved);
  PipelineSession session(cfg, LoadRunManifest(cfg));
  const EvaluationOutput evaluation = session.Evaluate(ReadRecords(records_path), run_dir);
  WriteEvaluation(run_dir, evaluation);
  out << evaluation.report.ToJson().dump(2) << "\n";
  return kExitOk;
}

int AblateCommand(const Options& o, std::ostream& out) {
  const RunConfig cfg = ResolveConfig(o);
  std::vector<Attribute> attributes;
  if (o.attribute == "all") {
    attributes.assign(kAllAttributes.begin(), kAllAttributes.end());
  } else {
    try {
      attributes.push_back(ParseAttribute(o.attribute));
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }
  PipelineSession session(cfg, LoadRunManifest(cfg));
  nlohmann::json summary = nlohmann::json::array();
  for (Attribute a : attributes) {
    const AblationResult result = session.Ablate(a, cfg.output_dir);
    for (const AblationRow& row : result.rows) {
      summary.push_back({{"attribute", ToString(a)},
                         {"subcategory", row.subcategory},
                         {"descriptions", row.descriptions},
                         {"far", row.report.ToJson()["far"]},
                         {"wer", row.report.ToJson()["wer"]},
                         {"pmos", row.report.ToJson()["pmos_mean"]}});
    }
  }
  out << summary.dump() << "\n";
  return kExitOk;
}

std::vector<LabeledReport> AblationRows(const fs::path& path, bool prefix) {
  const AblationResult result = AblationResult::Load(path);
  std::vector<LabeledReport> rows;
  for (const AblationRow& row : result.rows) {
    rows.push_back({prefix ? fmt::format("{}/{}", ToString(result.attribute), row.subcategory)
                           : row.subcategory,
                    row.report});
  }
  return rows;
}

EvalReport LoadReport(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("missing {}", path.string()));
  try {
    return EvalReport::FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

int ReportCommand(const Options& o, std::ostream& out) {
  std::vector<LabeledReport> reports;
  TableSpec spec;
  const fs::path run_dir = o.out;
  if (o.table == "accents") {
    spec = AccentsTableSpec();
    const fs::path path = o.input.empty() ? run_dir / "ablation" / "accent.json" : fs::path(o.input);
    if (!fs::exists(path)) throw ConfigError(fmt::format("missing {}", path.string()));
    reports = AblationRows(path, false);
  } else if (o.table == "attributes") {
    spec = AttributesTableSpec();
    for (Attribute a : kAllAttributes) {
      if (a == Attribute::kAccent) continue;
      const fs::path path = run_dir / "ablation" / (std::string(ToString(a)) + ".json");
      if (!fs::exists(path)) {
        spdlog::warn("no ablation summary at {}", path.string());
        continue;
      }
      for (auto& row : AblationRows(path, true)) reports.push_back(std::move(row));
    }
  } else if (o.table == "systems") {
    if (o.runs.empty()) throw ConfigError("report --table systems needs run directories");
    std::vector<std::string> labels;
    for (const std::string& dir : o.runs) {
      const std::string label = fs::path(dir).lexically_normal().filename().string();
      labels.push_back(label);
      reports.push_back({label, LoadReport(fs::path(dir) / "report.json")});
    }
    spec = SystemsTableSpec(labels);
  } else {
    throw ConfigError(fmt::format("unknown table '{}'", o.table));
  }

  std::vector<std::string> warnings;
  std::string text;
  if (!o.series.empty() || o.format == "svg") {
    const Metric metric = ParseMetric(o.series.empty() ? "WER" : o.series);
    const auto series = SortedSeries(reports, metric, &warnings);
    if (o.format == "svg") {
      text = SeriesToSvg(series, metric);
    } else if (o.format == "csv") {
      text = SeriesToCsv(series, metric);
    } else {
      throw ConfigError("sorted series support --format csv or svg");
    }
  } else {
    const Table table = BuildTable(reports, spec);
    warnings = table.warnings;
    text = o.format == "csv" ? ToCsv(table) : ToMarkdown(table);
  }
  for (const std::string& w : warnings) spdlog::warn("{}", w);
  Emit(o, text, out);
  return kExitOk;
}

int MockServeCommand(const Options& o, std::ostream& out) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::Load(o.config);
  if (!o.manifest.empty()) cfg.manifest = o.manifest;
  if (o.seed) cfg.mock_world.seed = *o.seed;
  DatasetManifest manifest;
  if (!cfg.manifest.empty()) manifest = LoadRunManifest(cfg);
  auto world = std::make_shared<const MockWorld>(cfg.mock_world, manifest);
  MockHttpServer server(std::make_shared<const MockService>(world));
  const int port = server.Start(o.host, o.port);
  out << nlohmann::json{{"listening", fmt::format("http://{}:{}", o.host, port)}}.dump()
      << std::endl;
  server.Wait();
  return kExitOk;
}

int Fail(std::ostream& err, int code, std::string_view kind, const std::string& message) {
  err << nlohmann::json{{"error", {{"code", kind}, {"message", message}, {"exit_code", code}}}}
             .dump()
      << "\n";
  return code;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dual speech anonymization pipeline and evaluation harness", "speechveil"};
  app.require_subcommand(1);
  app.add_option("--log-level", o.log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto* filter = app.add_subcommand("filter-dataset", "Deduplicate transcripts and drop small speakers");
  filter->add_option("--manifest", o.manifest, "Input manifest (JSON lines)")->required();
  filter->add_option("--out", o.out, "Filtered manifest path");
  filter->add_option("--min-utts", o.min_utts, "Minimum utterances per speaker");
  filter->add_flag("--fixpoint", o.fixpoint, "Repeat until the speaker set is stable");

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Run config JSON");
    cmd->add_option("--manifest", o.manifest, "Dataset manifest override");
    cmd->add_option("--endpoints", o.endpoints, "Endpoint config JSON override");
    cmd->add_option("--seed", o.seed, "Seed override");
    cmd->add_option("--out", o.out, "Run directory");
  };
  auto* anonymize = app.add_subcommand("anonymize", "Anonymize every utterance of a manifest");
  add_run_options(anonymize);
  auto* evaluate = app.add_subcommand("evaluate", "Score a run directory");
  add_run_options(evaluate);
  auto* ablate = app.add_subcommand("ablate", "Attribute ablation over description grids");
  add_run_options(ablate);
  ablate->add_option("--attribute", o.attribute, "Attribute name or 'all'")->required();

  auto* report = app.add_subcommand("report", "Emit tables and sorted series");
  report->add_option("--table", o.table, "systems|accents|attributes")
      ->required()
      ->check(CLI::IsMember({"systems", "accents", "attributes"}));
  report->add_option("--format", o.format, "md|csv|svg")->check(CLI::IsMember({"md", "csv", "svg"}));
  report->add_option("--out", o.out, "Run directory holding ablation summaries");
  report->add_option("--input", o.input, "Ablation summary JSON for the accents table");
  report->add_option("--series", o.series, "Emit the sorted WER or PMOS series instead");
  report->add_option("--output", o.output, "Write to a file instead of stdout");
  report->add_option("runs", o.runs, "Run directories for the systems table");

  auto* serve = app.add_subcommand("mock-serve", "Serve the mock backends over HTTP");
  serve->add_option("--config", o.config, "Run config JSON (mock_world, manifest)");
  serve->add_option("--manifest", o.manifest, "Dataset manifest");
  serve->add_option("--seed", o.seed, "Mock world seed");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port; 0 picks a free one");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return Fail(err, kExitUsage, "usage", e.what());
  }

  UseStderrLogging(o.log_level);
  try {
    if (*filter) return FilterDatasetCommand(o, out);
    if (*anonymize) return AnonymizeCommand(o, out);
    if (*evaluate) return EvaluateCommand(o, out);
    if (*ablate) return AblateCommand(o, out);
    if (*report) return ReportCommand(o, out);
    if (*serve) return MockServeCommand(o, out);
  } catch (const ConfigError& e) {
    return Fail(err, kExitUsage, "config", e.what());
  } catch (const BackendError& e) {
    return Fail(err, kExitBackend, "backend", e.what());
  } catch (const TransportError& e) {
    return Fail(err, kExitBackend, "backend", e.what());
  } catch (const ProtocolError& e) {
    return Fail(err, kExitBackend, "backend", e.what());
  } catch (const ValidationError& e) {
    return Fail(err, kExitValidation, "validation", e.what());
  } catch (const Error& e) {
    return Fail(err, kExitValidation, "validation", e.what());
  } catch (const std::exception& e) {
    return Fail(err, kExitUnexpected, "internal", e.what());
  }
  return Fail(err, kExitUsage, "usage", "no command given");
}

}  // namespace speechveil

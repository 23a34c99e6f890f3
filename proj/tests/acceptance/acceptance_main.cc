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

// Prints one PASS/FAIL line per acceptance criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <unistd.h>

#include "content_cases.h"
#include "speechveil/backend/synthetic_corpus.h"
#include "speechveil/content/policy.h"
#include "speechveil/content/replacement.h"
#include "speechveil/core/dataset.h"
#include "speechveil/metrics/calibration.h"
#include "speechveil/metrics/wer.h"
#include "speechveil/pipeline/record.h"
#include "speechveil/pipeline/run_config.h"
#include "speechveil/pipeline/session.h"
#include "speechveil/report/tables.h"
#include "speechveil/speaker/attributes.h"

namespace speechveil {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Tokens = std::vector<std::string>;

// Collects failed expectations for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }
  std::string Summary() const {
    std::string out;
    for (const std::string& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(fs::temp_directory_path() /
              fmt::format("speechveil_acceptance_{}_{}", ::getpid(), name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Small audio keeps the grid runs fast and light on disk.
RunConfig MockConfig(std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.parallelism = 4;
  cfg.mock_world.seed = seed;
  cfg.mock_world.sample_rate = 8000;
  cfg.mock_world.tts_seconds_per_char = 0.005;
  return cfg;
}

DatasetManifest Corpus(std::size_t speakers, std::size_t per_speaker,
                       const RunConfig& cfg) {
  return GenerateSyntheticCorpus({speakers, per_speaker, cfg.seed}, cfg.mock_world);
}

// ---------------------------------------------------------------------------

std::size_t BruteForceEdits(const Tokens& r, std::size_t i, const Tokens& h, std::size_t j) {
  if (i == r.size()) return h.size() - j;
  if (j == h.size()) return r.size() - i;
  return std::min({BruteForceEdits(r, i + 1, h, j + 1) + (r[i] == h[j] ? 0 : 1),
                   BruteForceEdits(r, i + 1, h, j) + 1,
                   BruteForceEdits(r, i, h, j + 1) + 1});
}

void WerOracle(Check& check, std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  static const Tokens vocab = {"A", "B", "C", "D"};
  auto random_tokens = [&] {
    Tokens out(rng() % 9);
    for (auto& t : out) t = vocab[rng() % vocab.size()];
    return out;
  };
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const Tokens r = random_tokens();
    const Tokens h = random_tokens();
    if (AlignTokens(r, h).edits() != BruteForceEdits(r, 0, h, 0)) ++mismatches;
  }
  const double secs = Seconds(start);
  check.Expect(mismatches == 0, fmt::format("{} mismatches", mismatches));
  check.Expect(secs < 10.0, fmt::format("took {:.2f}s", secs));
  detail = fmt::format("1000 pairs, {} mismatches, {:.2f}s", mismatches, secs);
}

void Calibration(Check& check, std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 rng(77);
  std::normal_distribution<double> pos(0.6, 0.15);
  std::normal_distribution<double> neg(0.1, 0.15);
  std::vector<TrialRecord> trials;
  trials.reserve(20000);
  for (int i = 0; i < 10000; ++i) {
    trials.emplace_back("s", fmt::format("p{}", i), pos(rng), TrialRole::kPositive);
    trials.emplace_back("s", fmt::format("n{}", i), neg(rng), TrialRole::kNegative);
  }
  const ThresholdCalibration cal = CalibrateThreshold(trials);
  const std::vector<SweepPoint> sweep = ThresholdSweep(trials);
  bool monotone = true;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    monotone &= sweep[i].far <= sweep[i - 1].far;
  }
  // Recount directly at the chosen threshold.
  std::size_t fa = 0;
  std::size_t fr = 0;
  for (const TrialRecord& t : trials) {
    if (t.role == TrialRole::kNegative && t.score >= cal.threshold) ++fa;
    if (t.role == TrialRole::kPositive && t.score < cal.threshold) ++fr;
  }
  const double gap = std::abs(fa / 1e4 - fr / 1e4);
  const double secs = Seconds(start);
  check.Expect(gap <= 1e-4, fmt::format("|FAR-FRR| = {}", gap));
  check.Expect(std::abs(cal.far - fa / 1e4) < 1e-12 && std::abs(cal.frr - fr / 1e4) < 1e-12,
               "reported rates differ from recount");
  check.Expect(monotone, "FAR not monotone over the sweep");
  check.Expect(secs < 5.0, fmt::format("took {:.2f}s", secs));
  detail = fmt::format("t*={:.4f} FAR={:.4f} FRR={:.4f} sweep={} points, {:.2f}s", cal.threshold,
                       cal.far, cal.frr, sweep.size(), secs);
}

void PrivacyProperty(Check& check, std::string& detail) {
  const auto start = Clock::now();
  ScratchDir dir("privacy");
  RunConfig cfg = MockConfig(5);
  cfg.mock_world.embedding_noise = 0.0;
  const DatasetManifest manifest = Corpus(5, 10, cfg);
  check.Expect(manifest.utterances().size() == 50, "fixture is not 50 utterances");
  const EvalReport report = PipelineSession(cfg, manifest).Run(dir.path());
  const double secs = Seconds(start);
  check.Expect(report.counts.succeeded == 50, "not every utterance succeeded");
  check.Expect(report.far && *report.far == 0.0, "anonymized FAR is not 0.0");
  check.Expect(report.far_original && *report.far_original == 1.0, "original FAR is not 1.0");
  check.Expect(secs < 30.0, fmt::format("took {:.2f}s", secs));
  detail = fmt::format("FAR anonymized={:.1f}% original={:.1f}% over {} probes, {:.2f}s",
                       100 * report.far.value_or(NAN), 100 * report.far_original.value_or(NAN),
                       report.counts.probe_trials, secs);
}

const std::vector<std::string>& AccentRows() {
  static const std::vector<std::string> rows = {
      "American",     "Brazilian",     "Bulgarian",      "Catalan",       "Croatian",
      "Dutch",        "Estonian",      "French",         "Hungarian",     "Indonesian",
      "Italian",      "Japanese",      "Lithuanian",     "North Irish",   "Polish",
      "Scottish",     "Slovene",       "South England",  "Vietnamese",    "Australian",
      "British",      "Canadian",      "Chinese",        "Czech",         "Egyptian",
      "Finnish",      "German",        "Indian",         "Irish",         "Jamaican",
      "Latin American", "North England", "Pakistani",    "Romanian",      "Slovak",
      "South African", "Spanish",      "Wales"};
  return rows;
}

void AttributeAblation(Check& check, std::string& detail) {
  const auto start = Clock::now();
  ScratchDir dir("ablation");
  RunConfig cfg = MockConfig(7);
  cfg.parallelism = 2;
  const DatasetManifest manifest = Corpus(40, 12, cfg);
  PipelineSession session(cfg, manifest);
  std::size_t subcategories = 0;
  std::size_t records_checked = 0;
  std::size_t pinned = 0;
  std::vector<std::string> accent_rows;
  for (Attribute attribute : kAllAttributes) {
    const AblationResult result = session.Ablate(attribute, dir.path());
    const std::string name(ToString(attribute));
    check.Expect(result.rows.size() == Vocabulary(attribute).size(),
                 fmt::format("{}: {} rows", name, result.rows.size()));
    for (const AblationRow& row : result.rows) {
      ++subcategories;
      if (attribute == Attribute::kAccent) accent_rows.push_back(row.subcategory);
      check.Expect(row.descriptions == 400,
                   fmt::format("{}/{}: {} descriptions", name, row.subcategory, row.descriptions));
      const fs::path run = dir.path() / "ablation" / name / Slug(row.subcategory);
      const auto records = ReadRecords(run / "records.jsonl");
      check.Expect(records.size() == 400, fmt::format("{}/{}: {} records", name,
                                                      row.subcategory, records.size()));
      std::map<std::size_t, std::size_t> per_combo;
      for (const AnonymizationRecord& r : records) {
        ++records_checked;
        if (r.description && r.description->attributes.Get(attribute) == row.subcategory) {
          ++pinned;
        }
        if (r.grid) ++per_combo[r.grid->combo_index];
      }
      bool shape = per_combo.size() == 40;
      for (const auto& [combo, n] : per_combo) shape &= n == 10;
      check.Expect(shape, fmt::format("{}/{}: not 40 x 10", name, row.subcategory));
    }
    // Audio is not needed past this point.
    fs::remove_all(dir.path() / "ablation" / name);
  }
  std::vector<std::string> expected = AccentRows();
  std::sort(expected.begin(), expected.end());
  std::vector<std::string> got = accent_rows;
  std::sort(got.begin(), got.end());
  check.Expect(accent_rows.size() == 38, fmt::format("{} accent rows", accent_rows.size()));
  check.Expect(got == expected, "accent rows differ from the reference table");
  check.Expect(pinned == records_checked,
               fmt::format("{} of {} records pinned", pinned, records_checked));
  detail = fmt::format("{} subcategories x 400, {}/{} pinned, {} accent rows, {:.1f}s",
                       subcategories, pinned, records_checked, accent_rows.size(),
                       Seconds(start));
}

Utterance Utt(std::string id, std::string speaker, std::string transcript) {
  Utterance u;
  u.id = std::move(id);
  u.speaker_id = std::move(speaker);
  u.audio_ref = "audio/" + u.id + ".wav";
  u.reference_transcript = std::move(transcript);
  return u;
}

void DatasetFilter(Check& check, std::string& detail) {
  // A: 12 utterances, two repeating earlier transcripts. B: 10. C: 9.
  std::vector<Utterance> utts;
  for (int i = 0; i < 10; ++i) {
    utts.push_back(Utt(fmt::format("a{:02d}", i), "A", fmt::format("speaker a sentence {}", i)));
  }
  utts.push_back(Utt("a10", "A", "speaker a sentence 3"));
  utts.push_back(Utt("a11", "A", "  Speaker A   sentence 7 "));
  for (int i = 0; i < 10; ++i) {
    utts.push_back(Utt(fmt::format("b{:02d}", i), "B", fmt::format("speaker b sentence {}", i)));
  }
  for (int i = 0; i < 9; ++i) {
    utts.push_back(Utt(fmt::format("c{:02d}", i), "C", fmt::format("speaker c sentence {}", i)));
  }
  const DatasetManifest manifest(utts, "fixture");
  std::vector<std::string> expected;
  for (int i = 0; i < 10; ++i) expected.push_back(fmt::format("a{:02d}", i));
  for (int i = 0; i < 10; ++i) expected.push_back(fmt::format("b{:02d}", i));

  const FilterResult once = FilterDataset(manifest, {10, false});
  std::vector<std::string> ids;
  for (const Utterance& u : once.manifest.utterances()) ids.push_back(u.id);
  check.Expect(ids == expected, "filtered ids differ from the hand-enumerated set");
  check.Expect(once.speaker_count == 2 && once.utterance_count == 20,
               fmt::format("{} speakers / {} utterances", once.speaker_count,
                           once.utterance_count));
  check.Expect(once.duplicates_removed == 2, "duplicate count");
  const FilterResult twice = FilterDataset(once.manifest, {10, false});
  check.Expect(twice.manifest == once.manifest, "not idempotent");
  detail = fmt::format("A(10) B(10), {} duplicates removed, C dropped, idempotent",
                       once.duplicates_removed);
}

// Optional corpus-scale check; not part of the hermetic suite.
std::string SlueIntegration() {
  const char* path = std::getenv("SLUE_VOXPOPULI_MANIFEST");
  if (path == nullptr) {
    return "SKIP slue-voxpopuli-filter: set SLUE_VOXPOPULI_MANIFEST to run";
  }
  try {
    const FilterResult r = FilterDataset(ReadManifest(path), {10, false});
    const bool ok = r.speaker_count == 161 && r.utterance_count == 3729;
    return fmt::format("{} slue-voxpopuli-filter: {} speakers / {} utterances (expected 161 / 3729)",
                       ok ? "PASS" : "FAIL", r.speaker_count, r.utterance_count);
  } catch (const std::exception& e) {
    return fmt::format("FAIL slue-voxpopuli-filter: {}", e.what());
  }
}

void ContentRoundTrips(Check& check, std::string& detail) {
  std::mt19937_64 rng(31);
  std::size_t identity = 0;
  std::size_t oracle = 0;
  std::size_t inverse = 0;
  for (int i = 0; i < 500; ++i) {
    const testing::Case c = testing::RandomCase(rng);
    const std::string spliced =
        ApplyReplacements(c.transcript, IdentityPlan(c.transcript)).text;
    check.Expect(spliced == c.transcript.text(), "identity splice changed: " + spliced);
    identity += spliced == c.transcript.text();
    const testing::OracleCase o = testing::RandomPlanWithSplitJoinOracle(c, rng);
    const std::string applied = ApplyReplacements(c.transcript, o.plan).text;
    check.Expect(applied == o.expected, fmt::format("'{}' != '{}'", applied, o.expected));
    oracle += applied == o.expected;
  }
  for (int i = 0; i < 200; ++i) {
    const testing::Case c = testing::RandomCase(rng);
    const testing::ReplyCase r = testing::RandomWellFormedReply(c, rng);
    const ReplacementPlan parsed =
        ParseLlmReply(r.reply, ReplacementPolicy::Default(), c.transcript);
    check.Expect(parsed == r.plan, "parse did not invert: " + r.reply);
    inverse += parsed == r.plan;
  }
  detail = fmt::format("identity {}/500, split-join {}/500, inverse {}/200", identity, oracle,
                       inverse);
}

void ReplacementAccuracy(Check& check, std::string& detail) {
  ScratchDir dir("replacement");
  const RunConfig cfg = MockConfig(9);
  const EvalReport report = PipelineSession(cfg, Corpus(4, 6, cfg)).Run(dir.path());
  check.Expect(report.counts.entity_spans > 0, "fixture has no entity spans");
  check.Expect(report.replacement_accuracy && *report.replacement_accuracy == 1.0,
               "cyclic mock accuracy is not 1.0");

  const std::string text = "anna flew from paris to oslo on monday";
  const AnnotatedTranscript t(text, {MakeSpan(text, EntityLabel::kPerson, 0, 4),
                                     MakeSpan(text, EntityLabel::kPlace, 15, 20),
                                     MakeSpan(text, EntityLabel::kPlace, 24, 28),
                                     MakeSpan(text, EntityLabel::kWhen, 32, 38)});
  const ReplacementPlan plan = ParseLlmReply("####brian flew from lyon to oslo on friday####",
                                             ReplacementPolicy::Default(), t);
  const VerificationResult v = VerifyReplacements(t, ApplyReplacements(t, plan));
  check.Expect(v.accuracy == 0.75, fmt::format("fixture accuracy {}", v.accuracy));
  detail = fmt::format("cyclic {:.2f} over {} spans, fixture {}/{} = {:.2f}",
                       report.replacement_accuracy.value_or(NAN), report.counts.entity_spans,
                       v.correct, v.total, v.accuracy);
}

void Determinism(Check& check, std::string& detail) {
  ScratchDir dir("determinism");
  RunConfig cfg = MockConfig(13);
  cfg.mock_world.asr_char_error_rate = 0.03;
  const DatasetManifest manifest = Corpus(6, 8, cfg);
  std::map<std::string, std::string> first;
  std::size_t compared = 0;
  for (const char* name : {"one", "two"}) {
    const fs::path run = dir.path() / name;
    const EvalReport report = PipelineSession(cfg, manifest).Run(run);
    const Table table = BuildTable({{"speechveil", report}}, SystemsTableSpec({"speechveil"}));
    std::map<std::string, std::string> files = {
        {"records.jsonl", ReadFile(run / "records.jsonl")},
        {"trials.csv", ReadFile(run / "trials.csv")},
        {"report.json", ReadFile(run / "report.json")},
        {"table.md", ToMarkdown(table)},
        {"table.csv", ToCsv(table)}};
    if (first.empty()) {
      first = files;
      continue;
    }
    for (const auto& [file, content] : files) {
      check.Expect(!content.empty(), file + " is empty");
      check.Expect(content == first[file], file + " differs");
      ++compared;
    }
  }
  detail = fmt::format("{} artifacts byte-identical across two runs", compared);
}

void ReporterGoldens(Check& check, std::string& detail) {
  const fs::path golden = SPEECHVEIL_GOLDEN_DIR;
  const AblationResult result =
      AblationResult::Load(fs::path(SPEECHVEIL_FIXTURE_DIR) / "accent_ablation.json");
  std::vector<LabeledReport> reports;
  for (const AblationRow& row : result.rows) reports.push_back({row.subcategory, row.report});
  const Table table = BuildTable(reports, AccentsTableSpec());
  const auto wer = SortedSeries(reports, Metric::kWer);
  const auto pmos = SortedSeries(reports, Metric::kPmos);
  const std::vector<std::pair<std::string, std::string>> outputs = {
      {"report/accents.md", ToMarkdown(table)},
      {"report/accents.csv", ToCsv(table)},
      {"report/accents_wer_series.csv", SeriesToCsv(wer, Metric::kWer)},
      {"report/accents_wer_series.svg", SeriesToSvg(wer, Metric::kWer)},
      {"report/accents_pmos_series.csv", SeriesToCsv(pmos, Metric::kPmos)}};
  for (const auto& [file, content] : outputs) {
    check.Expect(content == ReadFile(golden / file), file + " differs from golden");
  }
  bool ascending = wer.size() == 38 && pmos.size() == 38;
  for (const auto* series : {&wer, &pmos}) {
    for (std::size_t i = 1; i < series->size(); ++i) {
      const SeriesPoint& a = (*series)[i - 1];
      const SeriesPoint& b = (*series)[i];
      ascending &= a.value < b.value || (a.value == b.value && a.label < b.label);
    }
  }
  check.Expect(ascending, "sorted series not ascending");
  detail = fmt::format("{} goldens, WER series {} .. {}", outputs.size(),
                       wer.empty() ? "" : wer.front().label, wer.empty() ? "" : wer.back().label);
}

}  // namespace
}  // namespace speechveil

int main() {
  using speechveil::Check;
  spdlog::set_level(spdlog::level::warn);
  const std::vector<std::pair<std::string, std::function<void(Check&, std::string&)>>>
      criteria = {{"wer-oracle", speechveil::WerOracle},
                  {"eer-calibration", speechveil::Calibration},
                  {"mock-privacy-far", speechveil::PrivacyProperty},
                  {"ablation-grid", speechveil::AttributeAblation},
                  {"dataset-filter", speechveil::DatasetFilter},
                  {"content-round-trips", speechveil::ContentRoundTrips},
                  {"replacement-accuracy", speechveil::ReplacementAccuracy},
                  {"determinism", speechveil::Determinism},
                  {"reporter-goldens", speechveil::ReporterGoldens}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    std::string detail;
    try {
      run(check, detail);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("threw: ") + e.what());
    }
    if (check.failed()) {
      ++failed;
      std::cout << "FAIL " << name << ": " << check.Summary() << std::endl;
    } else {
      std::cout << "PASS " << name << ": " << detail << std::endl;
    }
  }
  std::cout << speechveil::SlueIntegration() << std::endl;
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed,
                           criteria.size())
            << std::endl;
  return failed == 0 ? 0 : 1;
}

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

#include "speechveil/pipeline/session.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "speechveil/backend/audio.h"
#include "speechveil/backend/endpoint.h"
#include "speechveil/content/prompt.h"
#include "speechveil/content/replacement.h"
#include "speechveil/core/dataset.h"
#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"
#include "speechveil/core/text.h"
#include "speechveil/metrics/ner_f1.h"
#include "speechveil/metrics/quality.h"
#include "speechveil/metrics/wer.h"
#include "speechveil/pipeline/parallel.h"

namespace speechveil {

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string FileSafe(std::string_view id) {
  std::string out(id);
  for (char& c : out) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!keep) c = '_';
  }
  return out;
}

void MarkFailed(AnonymizationRecord& record, const std::string& stage,
                const std::exception& e) {
  record.status = RecordStatus::kFailed;
  record.failed_stage = stage;
  record.error = e.what();
  spdlog::warn("utterance {} failed at {}: {}", record.utterance_id, stage, e.what());
}

std::vector<double> Normalized(std::vector<double> v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

std::string AttributeValue(const SpeakerAttributes& attributes, Attribute attribute) {
  if (attribute == Attribute::kAccent && !attributes.accent) return "none";
  return attributes.Get(attribute);
}

}  // namespace

std::string Slug(std::string_view value) {
  std::string out = ToLowerAscii(value);
  std::replace(out.begin(), out.end(), ' ', '-');
  return out;
}

DatasetManifest LoadRunManifest(const RunConfig& config) {
  if (!std::filesystem::is_regular_file(config.manifest)) {
    throw ConfigError(
        fmt::format("manifest '{}' does not exist", config.manifest.string()));
  }
  DatasetManifest manifest = ReadManifest(config.manifest);
  if (config.limit && *config.limit < manifest.size()) {
    std::vector<Utterance> kept(manifest.utterances().begin(),
                                manifest.utterances().begin() +
                                    static_cast<std::ptrdiff_t>(*config.limit));
    manifest = DatasetManifest(std::move(kept), manifest.provenance());
  }
  return manifest;
}

PipelineSession::PipelineSession(RunConfig config, DatasetManifest manifest,
                                 TransportFactory factory)
    : config_(std::move(config)), manifest_(std::move(manifest)) {
  config_.Validate();
  world_ = std::make_shared<const MockWorld>(config_.mock_world, manifest_);
  clients_ = std::make_unique<BackendClients>(config_.endpoints, world_,
                                              std::move(factory));
}

AnonymizationRecord PipelineSession::SanitizeContent(const Utterance& u) {
  {
    std::lock_guard lock(cache_mu_);
    const auto it = content_cache_.find(u.id);
    if (it != content_cache_.end()) return it->second;
  }
  AnonymizationRecord r;
  r.utterance_id = u.id;
  r.speaker_id = u.speaker_id;
  r.source_audio = u.audio_ref;
  r.plan.transcript_id = u.id;
  std::string stage;
  try {
    stage = "transcribe";
    auto start = Clock::now();
    const std::string text = clients_->Transcribe(u.audio_ref);
    r.hypothesis = AnnotatedTranscript(text, {});
    r.timings.emplace_back(stage, MillisSince(start));

    stage = "ner";
    start = Clock::now();
    r.hypothesis = clients_->DetectEntities(text);
    r.timings.emplace_back(stage, MillisSince(start));

    stage = "prompt";
    start = Clock::now();
    const std::string prompt = BuildLlmPrompt(
        r.hypothesis, BuildEntityReport(r.hypothesis), config_.policy);
    r.timings.emplace_back(stage, MillisSince(start));

    stage = "complete";
    start = Clock::now();
    std::optional<ReplacementPlan> plan;
    std::string last_error;
    for (int attempt = 1; attempt <= config_.llm_attempts && !plan; ++attempt) {
      r.llm_attempts = attempt;
      const std::string reply = clients_->Complete(prompt);
      try {
        plan = ParseLlmReply(reply, config_.policy, r.hypothesis, u.id);
      } catch (const ParseError& e) {
        last_error = e.what();
      } catch (const AlignmentError& e) {
        last_error = e.what();
      }
    }
    if (!plan) {
      plan = IdentityPlan(r.hypothesis, u.id);
      r.llm_failure = fmt::format("no usable reply in {} attempts: {}",
                                  config_.llm_attempts, last_error);
      spdlog::warn("utterance {}: {}", u.id, *r.llm_failure);
    }
    r.timings.emplace_back(stage, MillisSince(start));

    stage = "apply";
    start = Clock::now();
    const SanitizedTranscript sanitized = ApplyReplacements(r.hypothesis, *plan);
    r.plan = *plan;
    r.sanitized = sanitized.text;
    r.timings.emplace_back(stage, MillisSince(start));

    stage = "verify";
    start = Clock::now();
    VerificationResult verification = VerifyReplacements(r.hypothesis, sanitized);
    r.verdicts = std::move(verification.verdicts);
    r.replaced_correct = verification.correct;
    r.timings.emplace_back(stage, MillisSince(start));
  } catch (const std::exception& e) {
    MarkFailed(r, stage, e);
  }
  std::lock_guard lock(cache_mu_);
  content_cache_.emplace(u.id, r);
  return r;
}

SpeakerDescription PipelineSession::SelectDescription(const Utterance& u) const {
  switch (config_.description_source) {
    case DescriptionSource::kRandom:
      return SampleRandomDescription(DeriveSeed(config_.seed, "description/" + u.id));
    case DescriptionSource::kFixed:
      return Describe(*config_.fixed_description, "fixed");
    case DescriptionSource::kGrid:
      break;
  }
  throw ConfigError("grid descriptions come from the grid assignment");
}

AnonymizationRecord PipelineSession::AnonymizeUtterance(
    const Utterance& u, const SpeakerDescription& description,
    const std::filesystem::path& run_dir) {
  AnonymizationRecord r = SanitizeContent(u);
  r.description = description;
  if (!r.ok()) return r;
  try {
    const auto start = Clock::now();
    SynthesisResult synthesis = clients_->Synthesize(r.sanitized, description);
    const std::string relative = "audio/" + FileSafe(u.id) + ".wav";
    WriteBinaryFile(run_dir / relative, synthesis.wav_bytes);
    nlohmann::json sidecar = synthesis.metadata.is_object()
                                 ? synthesis.metadata
                                 : nlohmann::json::object();
    if (!sidecar.contains("identity_hash")) {
      sidecar["identity_hash"] = DescriptionIdentityHash(description.rendered);
    }
    if (!sidecar.contains("description")) sidecar["description"] = description.rendered;
    WriteBinaryFile(run_dir / (relative + ".json"), sidecar.dump(2) + "\n");
    r.audio_ref = relative;
    r.identity_hash = sidecar["identity_hash"].get<std::string>();
    r.timings.emplace_back("synthesize", MillisSince(start));
  } catch (const std::exception& e) {
    MarkFailed(r, "synthesize", e);
  }
  return r;
}

std::vector<AnonymizationRecord> PipelineSession::Anonymize(
    const std::filesystem::path& run_dir) {
  if (config_.description_source == DescriptionSource::kGrid) {
    return AnonymizeGrid(config_, run_dir);
  }
  std::filesystem::create_directories(run_dir / "audio");
  const auto& utterances = manifest_.utterances();
  std::vector<AnonymizationRecord> records(utterances.size());
  ParallelFor(utterances.size(), config_.parallelism, [&](std::size_t i) {
    records[i] = AnonymizeUtterance(utterances[i], SelectDescription(utterances[i]), run_dir);
  });
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.utterance_id < b.utterance_id;
  });
  return records;
}

std::vector<AnonymizationRecord> PipelineSession::AnonymizeGrid(
    const RunConfig& config, const std::filesystem::path& run_dir) {
  const AblationGrid grid =
      BuildAblationGrid(*config.grid.attribute, *config.grid.subcategory,
                        config.grid.combos, config.grid.utterances_per_combo,
                        config.seed);
  std::vector<std::string> pool;
  for (const Utterance& u : manifest_.utterances()) pool.push_back(u.id);
  const std::vector<GridAssignment> assignments =
      AssignUtterances(grid, pool, config.seed);
  std::filesystem::create_directories(run_dir / "audio");
  std::vector<AnonymizationRecord> records(assignments.size());
  ParallelFor(assignments.size(), config.parallelism, [&](std::size_t i) {
    const GridAssignment& a = assignments[i];
    records[i] = AnonymizeUtterance(*manifest_.Find(a.utterance_id),
                                    grid.combos[a.combo_index], run_dir);
    records[i].grid = GridSlot{a.combo_index, a.utterance_slot};
  });
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.utterance_id < b.utterance_id;
  });
  return records;
}

const OriginalEvidence& PipelineSession::Originals() {
  std::call_once(originals_once_, [this] {
    OriginalEvidence ev;
    const auto& utts = manifest_.utterances();
    const std::size_t n = utts.size();
    std::vector<std::vector<double>> embeddings(n);
    std::vector<double> mos(n);
    ParallelFor(n, config_.parallelism, [&](std::size_t i) {
      embeddings[i] = clients_->Embed(utts[i].audio_ref).values;
      mos[i] = clients_->PredictMos(utts[i].audio_ref);
    });
    for (std::size_t i = 0; i < n; ++i) {
      ev.embeddings[utts[i].id] = embeddings[i];
      ev.mos[utts[i].id] = mos[i];
    }

    // Indices grouped by speaker, ids ascending inside each group, so every
    // speaker owns one contiguous range of `order`.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(utts[a].speaker_id, utts[a].id) <
             std::tie(utts[b].speaker_id, utts[b].id);
    });
    std::map<std::string, std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t k = 0; k < n; ++k) {
      auto [it, inserted] = ranges.try_emplace(utts[order[k]].speaker_id, k, k);
      it->second.second = k + 1;
    }

    for (const auto& [speaker, range] : ranges) {
      for (std::size_t a = range.first; a < range.second; ++a) {
        for (std::size_t b = a + 1; b < range.second; ++b) {
          ev.calibration_trials.emplace_back(
              speaker, utts[order[b]].id,
              Cosine(embeddings[order[a]], embeddings[order[b]]),
              TrialRole::kPositive);
        }
      }
    }
    const std::size_t positives = ev.calibration_trials.size();
    if (ranges.size() >= 2) {
      SplitMix64 rng(DeriveSeed(config_.seed, "calibration/negatives"));
      for (std::size_t p = 0; p < positives; ++p) {
        const std::size_t a = order[rng.Below(n)];
        const auto [lo, hi] = ranges.at(utts[a].speaker_id);
        std::size_t k = rng.Below(n - (hi - lo));
        if (k >= lo) k += hi - lo;
        const std::size_t b = order[k];
        ev.calibration_trials.emplace_back(utts[a].speaker_id, utts[b].id,
                                           Cosine(embeddings[a], embeddings[b]),
                                           TrialRole::kNegative);
      }
    }
    try {
      ev.calibration = CalibrateThreshold(ev.calibration_trials);
    } catch (const UndefinedInputError& e) {
      spdlog::warn("no calibration: {}", e.what());
    }
    originals_ = std::move(ev);
  });
  return *originals_;
}

EvaluationOutput PipelineSession::Evaluate(
    const std::vector<AnonymizationRecord>& records,
    const std::filesystem::path& run_dir) {
  return EvaluateWith(config_, records, run_dir);
}

EvaluationOutput PipelineSession::EvaluateWith(
    const RunConfig& config, const std::vector<AnonymizationRecord>& records,
    const std::filesystem::path& run_dir) {
  const OriginalEvidence& ev = Originals();
  EvaluationOutput out;
  EvalReport& report = out.report;

  std::vector<const AnonymizationRecord*> ok;
  for (const auto& r : records) {
    if (!manifest_.Find(r.utterance_id)) {
      throw ValidationError(
          fmt::format("record {} is not in the manifest", r.utterance_id));
    }
    if (r.ok()) ok.push_back(&r);
  }
  std::sort(ok.begin(), ok.end(), [](const auto* a, const auto* b) {
    return a->utterance_id < b->utterance_id;
  });
  report.counts.utterances = records.size();
  report.counts.succeeded = ok.size();
  report.counts.failed = records.size() - ok.size();

  // Backend measurements on the synthesized audio.
  std::vector<std::vector<double>> embeddings(ok.size());
  std::vector<std::string> transcripts(ok.size());
  std::vector<double> mos(ok.size());
  ParallelFor(ok.size(), config.parallelism, [&](std::size_t i) {
    const std::string path = (run_dir / ok[i]->audio_ref).string();
    embeddings[i] = clients_->Embed(path).values;
    transcripts[i] = clients_->Transcribe(path);
    mos[i] = clients_->PredictMos(path);
  });

  // Enrollment: the source speaker's other originals.
  std::map<std::string, std::vector<std::string>> by_speaker;
  for (const Utterance& u : manifest_.utterances()) by_speaker[u.speaker_id].push_back(u.id);
  for (auto& [speaker, ids] : by_speaker) std::sort(ids.begin(), ids.end());
  std::vector<std::optional<std::vector<double>>> enrollment(ok.size());
  for (std::size_t i = 0; i < ok.size(); ++i) {
    std::vector<double> sum;
    for (const std::string& id : by_speaker.at(ok[i]->speaker_id)) {
      if (id == ok[i]->utterance_id) continue;
      const std::vector<double>& e = ev.embeddings.at(id);
      if (sum.empty()) {
        sum = e;
        if (config.enrollment == EnrollmentMode::kSingle) break;
      } else {
        for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += e[d];
      }
    }
    if (!sum.empty()) enrollment[i] = Normalized(std::move(sum));
  }

  out.trials = ev.calibration_trials;
  std::vector<TrialRecord> original_probes;
  std::vector<std::optional<TrialRecord>> anonymized_probes(ok.size());
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (!enrollment[i]) continue;
    original_probes.emplace_back(ok[i]->speaker_id, ok[i]->utterance_id,
                                 Cosine(*enrollment[i], ev.embeddings.at(ok[i]->utterance_id)),
                                 TrialRole::kOriginalProbe);
    anonymized_probes[i].emplace(ok[i]->speaker_id, ok[i]->utterance_id,
                                 Cosine(*enrollment[i], embeddings[i]),
                                 TrialRole::kAnonymizedProbe);
  }
  std::vector<TrialRecord> all_anonymized;
  for (const auto& t : anonymized_probes) {
    if (t) all_anonymized.push_back(*t);
  }
  out.trials.insert(out.trials.end(), original_probes.begin(), original_probes.end());
  out.trials.insert(out.trials.end(), all_anonymized.begin(), all_anonymized.end());

  report.calibration = ev.calibration;
  for (const TrialRecord& t : ev.calibration_trials) {
    (t.role == TrialRole::kPositive ? report.counts.positive_trials
                                    : report.counts.negative_trials)++;
  }
  report.counts.probe_trials = all_anonymized.size();
  if (ev.calibration && !all_anonymized.empty()) {
    report.far = ComputeFar(all_anonymized, *ev.calibration);
    report.far_original = ComputeFar(original_probes, *ev.calibration);
  }

  // Condition metrics over a subset of `ok`, by position.
  auto condition = [&](const std::vector<std::size_t>& subset) {
    ConditionMetrics m;
    m.utterances = subset.size();
    if (subset.empty()) return m;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<TrialRecord> probes;
    std::vector<double> scores;
    for (std::size_t i : subset) {
      pairs.emplace_back(ok[i]->sanitized, transcripts[i]);
      if (anonymized_probes[i]) probes.push_back(*anonymized_probes[i]);
      scores.push_back(mos[i]);
    }
    m.wer = ComputeCorpusWer(pairs).wer;
    m.pmos = PmosMean(scores);
    if (ev.calibration && !probes.empty()) m.far = ComputeFar(probes, *ev.calibration);
    return m;
  };
  std::vector<std::size_t> everything(ok.size());
  for (std::size_t i = 0; i < ok.size(); ++i) everything[i] = i;
  const ConditionMetrics overall = condition(everything);
  report.wer = overall.wer;
  report.pmos_mean = overall.pmos;

  std::vector<std::pair<std::string, std::string>> original_pairs;
  bool gold_available = !ok.empty();
  std::vector<AnnotatedTranscript> gold;
  std::vector<AnnotatedTranscript> predicted;
  std::vector<double> original_mos;
  std::size_t spans = 0;
  std::size_t correct = 0;
  for (const AnonymizationRecord* r : ok) {
    const Utterance& u = *manifest_.Find(r->utterance_id);
    if (u.reference_transcript) {
      original_pairs.emplace_back(*u.reference_transcript, r->hypothesis.text());
    }
    if (u.reference_transcript && u.gold_spans) {
      gold.emplace_back(*u.reference_transcript, *u.gold_spans);
      predicted.push_back(r->hypothesis);
    } else {
      gold_available = false;
    }
    original_mos.push_back(ev.mos.at(r->utterance_id));
    spans += r->verdicts.size();
    correct += r->replaced_correct;
  }
  if (!original_pairs.empty()) report.wer_original = ComputeCorpusWer(original_pairs).wer;
  if (gold_available) {
    const NerScore ner = ComputeNerF1(gold, predicted);
    report.ner_f1 = ner.f1;
    report.ner_precision = ner.precision;
    report.ner_recall = ner.recall;
  }
  if (!ok.empty()) {
    report.replacement_accuracy = PooledAccuracy(correct, spans);
    report.pmos_original = PmosMean(original_mos);
  }
  report.counts.entity_spans = spans;
  report.counts.replaced_spans = correct;

  for (Attribute attribute : kAllAttributes) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (ok[i]->description) {
        groups[AttributeValue(ok[i]->description->attributes, attribute)].push_back(i);
      }
    }
    for (const auto& [value, subset] : groups) {
      report.breakdown[std::string(ToString(attribute))][value] = condition(subset);
    }
  }

  report.provenance = {
      {"seed", config.seed},
      {"config_hash", config.Hash()},
      {"manifest", manifest_.provenance()},
      {"prompt_template", kPromptTemplateVersion},
      {"protocol_version", kProtocolVersion},
      {"description_source", ToString(config.description_source)},
      {"enrollment", ToString(config.enrollment)},
  };
  return out;
}

void WriteFrozenConfig(const std::filesystem::path& run_dir, const RunConfig& config) {
  nlohmann::json frozen = config.ToJson();
  frozen["output_dir"] = run_dir.generic_string();
  frozen["config_hash"] = config.Hash();
  WriteBinaryFile(run_dir / "config.json", frozen.dump(2) + "\n");
}

void WriteEvaluation(const std::filesystem::path& run_dir,
                     const EvaluationOutput& evaluation) {
  std::ostringstream trials;
  WriteTrialsCsv(evaluation.trials, trials);
  WriteBinaryFile(run_dir / "trials.csv", trials.str());
  WriteBinaryFile(run_dir / "report.json", evaluation.report.ToJson().dump(2) + "\n");
}

void WriteRunFiles(const std::filesystem::path& run_dir, const RunConfig& config,
                   const std::vector<AnonymizationRecord>& records,
                   const EvaluationOutput& evaluation) {
  WriteFrozenConfig(run_dir, config);
  WriteRecords(records, run_dir / "records.jsonl");
  WriteTimings(records, run_dir / "timings.jsonl");
  WriteEvaluation(run_dir, evaluation);
}

EvalReport PipelineSession::RunWith(const RunConfig& config,
                                    const std::filesystem::path& run_dir) {
  std::filesystem::create_directories(run_dir / "audio");
  std::vector<AnonymizationRecord> records;
  if (config.description_source == DescriptionSource::kGrid) {
    records = AnonymizeGrid(config, run_dir);
  } else {
    records = Anonymize(run_dir);
  }
  const EvaluationOutput evaluation = EvaluateWith(config, records, run_dir);
  WriteRunFiles(run_dir, config, records, evaluation);
  spdlog::info("run {}: {} of {} utterances succeeded", run_dir.string(),
               evaluation.report.counts.succeeded, records.size());
  return evaluation.report;
}

EvalReport PipelineSession::Run(const std::filesystem::path& run_dir) {
  return RunWith(config_, run_dir);
}

AblationResult PipelineSession::Ablate(Attribute attribute,
                                       const std::filesystem::path& out_dir) {
  AblationResult result;
  result.attribute = attribute;
  result.combos = config_.grid.combos;
  result.utterances_per_combo = config_.grid.utterances_per_combo;
  const std::filesystem::path base = out_dir / "ablation";
  for (const std::string& subcategory : Vocabulary(attribute)) {
    RunConfig config = config_;
    config.description_source = DescriptionSource::kGrid;
    config.grid.attribute = attribute;
    config.grid.subcategory = subcategory;
    const EvalReport report =
        RunWith(config, base / std::string(ToString(attribute)) / Slug(subcategory));
    result.rows.push_back({subcategory, result.combos * result.utterances_per_combo, report});
  }
  WriteBinaryFile(base / (std::string(ToString(attribute)) + ".json"),
                  result.ToJson().dump(2) + "\n");
  return result;
}

nlohmann::json AblationResult::ToJson() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const AblationRow& row : rows) {
    rows_json.push_back({{"subcategory", row.subcategory},
                         {"descriptions", row.descriptions},
                         {"report", row.report.ToJson()}});
  }
  return {{"attribute", ToString(attribute)},
          {"combos", combos},
          {"utterances_per_combo", utterances_per_combo},
          {"rows", rows_json}};
}

AblationResult AblationResult::FromJson(const nlohmann::json& json) {
  AblationResult result;
  try {
    result.attribute = ParseAttribute(json.at("attribute").get<std::string>());
    result.combos = json.at("combos").get<std::size_t>();
    result.utterances_per_combo = json.at("utterances_per_combo").get<std::size_t>();
    for (const auto& row : json.at("rows")) {
      result.rows.push_back({row.at("subcategory").get<std::string>(),
                             row.at("descriptions").get<std::size_t>(),
                             EvalReport::FromJson(row.at("report"))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed ablation summary: {}", e.what()));
  }
  return result;
}

AblationResult AblationResult::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read '{}'", path.string()));
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace speechveil

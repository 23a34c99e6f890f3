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

#ifndef SPEECHVEIL_PIPELINE_SESSION_H_
#define SPEECHVEIL_PIPELINE_SESSION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "speechveil/backend/clients.h"
#include "speechveil/backend/mock_world.h"
#include "speechveil/core/types.h"
#include "speechveil/metrics/calibration.h"
#include "speechveil/metrics/eval_report.h"
#include "speechveil/pipeline/record.h"
#include "speechveil/pipeline/run_config.h"
#include "speechveil/speaker/ablation.h"
#include "speechveil/speaker/attributes.h"
#include "speechveil/speaker/description.h"

namespace speechveil {

// Everything the attacker learns from unprotected audio. Independent of any
// anonymization run, so ablation subcategories share one copy.
struct OriginalEvidence {
  std::map<std::string, std::vector<double>> embeddings;  // by utterance id
  std::map<std::string, double> mos;                      // by utterance id
  std::vector<TrialRecord> calibration_trials;
  // Absent when the trials lack a positive or a negative pair.
  std::optional<ThresholdCalibration> calibration;
};

struct EvaluationOutput {
  EvalReport report;
  // Positives, negatives, then original and anonymized probes by id.
  std::vector<TrialRecord> trials;
};

struct AblationRow {
  std::string subcategory;
  std::size_t descriptions = 0;
  EvalReport report;
};

struct AblationResult {
  Attribute attribute = Attribute::kGender;
  std::size_t combos = 0;
  std::size_t utterances_per_combo = 0;
  std::vector<AblationRow> rows;  // vocabulary order

  nlohmann::json ToJson() const;
  static AblationResult FromJson(const nlohmann::json& json);
  static AblationResult Load(const std::filesystem::path& path);
};

// Lower-case, spaces to dashes: "very low-pitched" -> "very-low-pitched".
std::string Slug(std::string_view value);

// Reads cfg.manifest and applies cfg.limit.
DatasetManifest LoadRunManifest(const RunConfig& config);

class PipelineSession {
 public:
  // Mock endpoints resolve against a MockWorld built from `manifest`.
  PipelineSession(RunConfig config, DatasetManifest manifest,
                  TransportFactory factory = nullptr);

  const RunConfig& config() const { return config_; }
  const DatasetManifest& manifest() const { return manifest_; }
  BackendClients& clients() { return *clients_; }
  std::shared_ptr<const MockWorld> world() const { return world_; }

  // Content stages only: transcribe through verify. Cached per utterance.
  AnonymizationRecord SanitizeContent(const Utterance& utterance);
  // Full chain for one utterance; audio lands under run_dir/audio.
  AnonymizationRecord AnonymizeUtterance(const Utterance& utterance,
                                         const SpeakerDescription& description,
                                         const std::filesystem::path& run_dir);
  SpeakerDescription SelectDescription(const Utterance& utterance) const;

  // Random and fixed sources cover the whole manifest; the grid source
  // covers the grid's utterance assignment.
  std::vector<AnonymizationRecord> Anonymize(const std::filesystem::path& run_dir);

  const OriginalEvidence& Originals();
  EvaluationOutput Evaluate(const std::vector<AnonymizationRecord>& records,
                            const std::filesystem::path& run_dir);

  // Anonymize, evaluate and write config.json, records.jsonl, timings.jsonl,
  // trials.csv and report.json.
  EvalReport Run(const std::filesystem::path& run_dir);

  // One grid run per subcategory under out_dir/ablation/<attribute>/<slug>,
  // plus the summary out_dir/ablation/<attribute>.json.
  AblationResult Ablate(Attribute attribute, const std::filesystem::path& out_dir);

 private:
  std::vector<AnonymizationRecord> AnonymizeGrid(const RunConfig& config,
                                                 const std::filesystem::path& run_dir);
  EvaluationOutput EvaluateWith(const RunConfig& config,
                                const std::vector<AnonymizationRecord>& records,
                                const std::filesystem::path& run_dir);
  EvalReport RunWith(const RunConfig& config, const std::filesystem::path& run_dir);

  RunConfig config_;
  DatasetManifest manifest_;
  std::shared_ptr<const MockWorld> world_;
  std::unique_ptr<BackendClients> clients_;

  std::mutex cache_mu_;
  std::map<std::string, AnonymizationRecord> content_cache_;
  std::once_flag originals_once_;
  std::optional<OriginalEvidence> originals_;
};

// config.json with output_dir set to run_dir and the config hash added.
void WriteFrozenConfig(const std::filesystem::path& run_dir, const RunConfig& config);
// trials.csv and report.json.
void WriteEvaluation(const std::filesystem::path& run_dir,
                     const EvaluationOutput& evaluation);

// Writes config.json (frozen, with its hash), records.jsonl, timings.jsonl,
// trials.csv and report.json into run_dir.
void WriteRunFiles(const std::filesystem::path& run_dir, const RunConfig& config,
                   const std::vector<AnonymizationRecord>& records,
                   const EvaluationOutput& evaluation);

}  // namespace speechveil

#endif  // SPEECHVEIL_PIPELINE_SESSION_H_

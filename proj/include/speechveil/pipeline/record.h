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

#ifndef SPEECHVEIL_PIPELINE_RECORD_H_
#define SPEECHVEIL_PIPELINE_RECORD_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "speechveil/content/replacement.h"
#include "speechveil/core/types.h"
#include "speechveil/speaker/description.h"

namespace speechveil {

enum class RecordStatus { kOk, kFailed };

struct GridSlot {
  std::size_t combo_index = 0;
  std::size_t utterance_slot = 0;
  friend bool operator==(const GridSlot&, const GridSlot&) = default;
};

struct AnonymizationRecord {
  std::string utterance_id;
  std::string speaker_id;
  std::string source_audio;
  RecordStatus status = RecordStatus::kOk;
  std::optional<std::string> failed_stage;
  std::optional<std::string> error;

  // ASR hypothesis and the entities found in it.
  AnnotatedTranscript hypothesis;
  int llm_attempts = 0;
  // Set when every LLM attempt failed and the identity plan was used.
  std::optional<std::string> llm_failure;
  ReplacementPlan plan;
  std::string sanitized;
  std::vector<ReplacementVerdict> verdicts;
  std::size_t replaced_correct = 0;

  std::optional<SpeakerDescription> description;
  std::optional<GridSlot> grid;
  // Relative to the run directory.
  std::string audio_ref;
  std::string identity_hash;

  // Wall-clock milliseconds per stage; kept out of ToJson().
  std::vector<std::pair<std::string, double>> timings;

  bool ok() const { return status == RecordStatus::kOk; }

  nlohmann::json ToJson() const;
  static AnonymizationRecord FromJson(const nlohmann::json& json);
  nlohmann::json TimingsJson() const;
};

// One record per line, sorted by utterance id.
void WriteRecords(const std::vector<AnonymizationRecord>& records,
                  const std::filesystem::path& path);
std::vector<AnonymizationRecord> ReadRecords(const std::filesystem::path& path);
void WriteTimings(const std::vector<AnonymizationRecord>& records,
                  const std::filesystem::path& path);

}  // namespace speechveil

#endif  // SPEECHVEIL_PIPELINE_RECORD_H_

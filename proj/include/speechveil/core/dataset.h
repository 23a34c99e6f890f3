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

#ifndef SPEECHVEIL_CORE_DATASET_H_
#define SPEECHVEIL_CORE_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "speechveil/core/types.h"

namespace speechveil {

struct FilterOptions {
  std::size_t min_utts = 10;
  // Sensitivity-analysis variant: alternate speaker dropping and
  // deduplication restricted to the surviving speakers until the speaker set
  // stops changing.
  bool to_fixpoint = false;
};

struct FilterResult {
  DatasetManifest manifest;
  std::size_t input_speakers = 0;
  std::size_t input_utterances = 0;
  std::size_t duplicates_removed = 0;
  std::size_t speakers_dropped = 0;
  std::size_t speaker_count = 0;
  std::size_t utterance_count = 0;
};

// Drops utterances whose normalized reference transcript was already seen
// (first occurrence in manifest order wins), then drops speakers left with
// fewer than min_utts utterances.
FilterResult FilterDataset(const DatasetManifest& manifest,
                           const FilterOptions& options);

// Manifest files are JSON lines: {id, speaker_id, audio_ref, transcript}.
// Unknown fields are ignored. An optional "entities" array of
// {label, char_start, char_end} carries gold annotations of the transcript.
DatasetManifest ParseManifest(std::istream& in, std::string provenance);
DatasetManifest ReadManifest(const std::filesystem::path& path);
void WriteManifest(const DatasetManifest& manifest, std::ostream& out);

nlohmann::json ToJson(const Utterance& utterance);
Utterance UtteranceFromJson(const nlohmann::json& record);

nlohmann::json ToJson(const EntitySpan& span);
EntitySpan SpanFromJson(const nlohmann::json& record, std::string_view text);

}  // namespace speechveil

#endif  // SPEECHVEIL_CORE_DATASET_H_

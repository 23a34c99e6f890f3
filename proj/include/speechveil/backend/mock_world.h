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

#ifndef SPEECHVEIL_BACKEND_MOCK_WORLD_H_
#define SPEECHVEIL_BACKEND_MOCK_WORLD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "speechveil/backend/audio.h"
#include "speechveil/core/types.h"
#include "speechveil/speaker/attributes.h"

namespace speechveil {

enum class MockLlmMode {
  kCycle,      // cyclic per-label substitutions
  kEcho,       // returns the sentence unchanged
  kMalformed,  // drops the delimiters
};

struct MockWorldConfig {
  std::uint64_t seed = 0;
  double asr_char_error_rate = 0.0;
  // Standard deviation of the whole noise vector before re-normalization.
  double embedding_noise = 0.0;
  int embedding_dim = 192;
  std::map<EntityLabel, std::vector<std::string>> gazetteer;
  std::map<EntityLabel, std::vector<std::string>> replacement_cycles;
  double tts_seconds_per_char = 0.02;
  int sample_rate = 16000;

  // Built-in gazetteer and replacement cycles, disjoint from each other.
  static MockWorldConfig Default();

  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing keys keep their Default() values.
  static MockWorldConfig FromJson(const nlohmann::json& json);
};

// Audio handed to a mock service: either a corpus recording known by its
// reference, or a waveform produced by the mock synthesizer.
struct MockAudio {
  const Utterance* original = nullptr;
  std::string reference;
  nlohmann::json metadata;  // synthesized audio only
};

// Deterministic stand-ins for all six model services. Immutable after
// construction, so concurrent calls are safe and results depend only on
// (config, request).
class MockWorld {
 public:
  MockWorld(MockWorldConfig config, const DatasetManifest& manifest);

  const MockWorldConfig& config() const { return config_; }

  // Resolves an audio reference: corpus references map through the table;
  // anything else is read from disk as a mock-synthesized WAV.
  MockAudio ResolvePath(const std::string& path) const;
  MockAudio ResolveBytes(std::string_view wav_bytes) const;

  std::string Transcribe(const MockAudio& audio) const;
  std::vector<EntitySpan> DetectEntities(const std::string& text) const;
  // Reads the prompt the same way an instruction-following model would: the
  // delimiter from the output-format line, the fenced sentence, the entity
  // clauses and an optional mapping block.
  std::string Complete(std::string_view prompt,
                       MockLlmMode mode = MockLlmMode::kCycle) const;
  WavAudio Synthesize(const std::string& text, const std::string& description,
                      const std::optional<SpeakerAttributes>& attributes) const;
  std::vector<double> Embed(const MockAudio& audio) const;
  double PredictMos(const MockAudio& audio) const;

  // Ground-truth vectors, exposed for tests.
  std::vector<double> SpeakerVector(const std::string& speaker_id) const;
  std::vector<double> DescriptionVector(const std::string& identity_hash) const;

  // Replacement chosen for a surface of a label under DISSIMILAR mode.
  std::string CycleReplacement(EntityLabel label, std::string_view surface) const;

 private:
  MockWorldConfig config_;
  std::unordered_map<std::string, Utterance> by_reference_;
};

// Hex FNV-1a of the rendered description; the mock speaker identity.
std::string DescriptionIdentityHash(std::string_view description);

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_MOCK_WORLD_H_

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

#ifndef SPEECHVEIL_SPEAKER_DESCRIPTION_H_
#define SPEECHVEIL_SPEAKER_DESCRIPTION_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "speechveil/speaker/attributes.h"

namespace speechveil {

struct RenderOptions {
  // Replaces "a male"/"a female" with a speaker name for TTS models that
  // support explicit speaker selection.
  std::optional<std::string> named_subject;
};

struct SpeakerDescription {
  SpeakerAttributes attributes;
  std::string rendered;
  std::string seed_trace;

  nlohmann::json ToJson() const;
  static SpeakerDescription FromJson(const nlohmann::json& json);

  friend bool operator==(const SpeakerDescription&,
                         const SpeakerDescription&) = default;
};

// "<subject> reads a book <rate> with <pitch>[ and <modulation>] voice. The
// recording is <channel phrase>."
std::string RenderDescription(const SpeakerAttributes& attributes,
                              const RenderOptions& options = {});

// Draws gender, pitch, modulation, channel, rate and accent in that order,
// each uniformly, from SplitMix64(seed).
SpeakerAttributes SampleRandomAttributes(std::uint64_t seed);
SpeakerDescription SampleRandomDescription(std::uint64_t seed,
                                           const RenderOptions& options = {});

SpeakerDescription Describe(const SpeakerAttributes& attributes,
                            std::string seed_trace,
                            const RenderOptions& options = {});

}  // namespace speechveil

#endif  // SPEECHVEIL_SPEAKER_DESCRIPTION_H_

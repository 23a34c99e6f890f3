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

#ifndef SPEECHVEIL_SPEAKER_ATTRIBUTES_H_
#define SPEECHVEIL_SPEAKER_ATTRIBUTES_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace speechveil {

enum class Attribute {
  kGender,
  kPitch,
  kPitchModulation,
  kChannel,
  kSpeakingRate,
  kAccent,
};

inline constexpr std::array<Attribute, 6> kAllAttributes = {
    Attribute::kGender,  Attribute::kPitch,        Attribute::kPitchModulation,
    Attribute::kChannel, Attribute::kSpeakingRate, Attribute::kAccent};

// "gender", "pitch", "pitch_modulation", "channel", "speaking_rate", "accent".
std::string_view ToString(Attribute attribute);
Attribute ParseAttribute(std::string_view name);

// Closed vocabulary of an attribute. Accents follow the accent table order.
const std::vector<std::string>& Vocabulary(Attribute attribute);

// Index of `value` in the attribute's vocabulary; ValidationError otherwise.
std::size_t ValueIndex(Attribute attribute, std::string_view value);

// Value indices per attribute. The accent is optional so that a description
// can omit the accent clause entirely.
struct SpeakerAttributes {
  std::size_t gender = 0;
  std::size_t pitch = 0;
  std::size_t pitch_modulation = 0;
  std::size_t channel = 0;
  std::size_t speaking_rate = 0;
  std::optional<std::size_t> accent;

  // Named-value accessors; Get throws ValidationError for a missing accent.
  const std::string& Get(Attribute attribute) const;
  std::optional<std::size_t> Index(Attribute attribute) const;
  void Set(Attribute attribute, std::size_t index);
  void Set(Attribute attribute, std::string_view value);

  // Throws ValidationError when an index lies outside its vocabulary.
  void Validate() const;

  nlohmann::json ToJson() const;
  static SpeakerAttributes FromJson(const nlohmann::json& json);

  friend bool operator==(const SpeakerAttributes&,
                         const SpeakerAttributes&) = default;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_SPEAKER_ATTRIBUTES_H_

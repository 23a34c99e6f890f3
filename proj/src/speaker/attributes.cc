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

#include "speechveil/speaker/attributes.h"

#include <algorithm>

#include <fmt/format.h>

#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

const std::vector<std::string> kGenders = {"female", "male"};
const std::vector<std::string> kPitches = {
    "very low-pitched", "low-pitched", "normal", "high-pitched",
    "very high-pitched"};
const std::vector<std::string> kModulations = {"expressive and animated",
                                               "monotone", "empty"};
const std::vector<std::string> kChannels = {"clean", "close-sound",
                                            "distant-sound", "noisy", "normal"};
const std::vector<std::string> kRates = {"very slowly", "slowly", "normally",
                                         "quickly", "very quickly"};
const std::vector<std::string> kAccents = {
    "American",      "Brazilian",      "Bulgarian", "Catalan",
    "Croatian",      "Dutch",          "Estonian",  "French",
    "Hungarian",     "Indonesian",     "Italian",   "Japanese",
    "Lithuanian",    "North Irish",    "Polish",    "Scottish",
    "Slovene",       "South England",  "Vietnamese", "Australian",
    "British",       "Canadian",       "Chinese",   "Czech",
    "Egyptian",      "Finnish",        "German",    "Indian",
    "Irish",         "Jamaican",       "Latin American", "North England",
    "Pakistani",     "Romanian",       "Slovak",    "South African",
    "Spanish",       "Wales"};

void CheckIndex(Attribute attribute, std::size_t index) {
  if (index >= Vocabulary(attribute).size()) {
    throw ValidationError(fmt::format("{} index {} outside vocabulary of {}",
                                      ToString(attribute), index,
                                      Vocabulary(attribute).size()));
  }
}

}  // namespace

std::string_view ToString(Attribute attribute) {
  switch (attribute) {
    case Attribute::kGender: return "gender";
    case Attribute::kPitch: return "pitch";
    case Attribute::kPitchModulation: return "pitch_modulation";
    case Attribute::kChannel: return "channel";
    case Attribute::kSpeakingRate: return "speaking_rate";
    case Attribute::kAccent: return "accent";
  }
  return "unknown";
}

Attribute ParseAttribute(std::string_view name) {
  for (Attribute attribute : kAllAttributes) {
    if (ToString(attribute) == name) return attribute;
  }
  throw ValidationError(fmt::format("unknown attribute '{}'", name));
}

const std::vector<std::string>& Vocabulary(Attribute attribute) {
  switch (attribute) {
    case Attribute::kGender: return kGenders;
    case Attribute::kPitch: return kPitches;
    case Attribute::kPitchModulation: return kModulations;
    case Attribute::kChannel: return kChannels;
    case Attribute::kSpeakingRate: return kRates;
    case Attribute::kAccent: return kAccents;
  }
  throw ValidationError("unknown attribute");
}

std::size_t ValueIndex(Attribute attribute, std::string_view value) {
  const auto& vocab = Vocabulary(attribute);
  const auto it = std::find(vocab.begin(), vocab.end(), value);
  if (it == vocab.end()) {
    throw ValidationError(fmt::format("'{}' is not a valid {} value", value,
                                      ToString(attribute)));
  }
  return static_cast<std::size_t>(it - vocab.begin());
}

std::optional<std::size_t> SpeakerAttributes::Index(Attribute attribute) const {
  switch (attribute) {
    case Attribute::kGender: return gender;
    case Attribute::kPitch: return pitch;
    case Attribute::kPitchModulation: return pitch_modulation;
    case Attribute::kChannel: return channel;
    case Attribute::kSpeakingRate: return speaking_rate;
    case Attribute::kAccent: return accent;
  }
  return std::nullopt;
}

const std::string& SpeakerAttributes::Get(Attribute attribute) const {
  const auto index = Index(attribute);
  if (!index) {
    throw ValidationError(fmt::format("{} is not set", ToString(attribute)));
  }
  CheckIndex(attribute, *index);
  return Vocabulary(attribute)[*index];
}

void SpeakerAttributes::Set(Attribute attribute, std::size_t index) {
  CheckIndex(attribute, index);
  switch (attribute) {
    case Attribute::kGender: gender = index; break;
    case Attribute::kPitch: pitch = index; break;
    case Attribute::kPitchModulation: pitch_modulation = index; break;
    case Attribute::kChannel: channel = index; break;
    case Attribute::kSpeakingRate: speaking_rate = index; break;
    case Attribute::kAccent: accent = index; break;
  }
}

void SpeakerAttributes::Set(Attribute attribute, std::string_view value) {
  Set(attribute, ValueIndex(attribute, value));
}

void SpeakerAttributes::Validate() const {
  for (Attribute attribute : kAllAttributes) {
    if (const auto index = Index(attribute)) CheckIndex(attribute, *index);
  }
}

nlohmann::json SpeakerAttributes::ToJson() const {
  nlohmann::json json = nlohmann::json::object();
  for (Attribute attribute : kAllAttributes) {
    json[std::string(ToString(attribute))] =
        Index(attribute) ? nlohmann::json(Get(attribute)) : nlohmann::json();
  }
  return json;
}

SpeakerAttributes SpeakerAttributes::FromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    throw ValidationError("speaker attributes must be a JSON object");
  }
  SpeakerAttributes out;
  for (Attribute attribute : kAllAttributes) {
    const std::string key(ToString(attribute));
    if (!json.contains(key) || json.at(key).is_null()) {
      if (attribute == Attribute::kAccent) continue;
      throw ValidationError(fmt::format("missing attribute '{}'", key));
    }
    out.Set(attribute, json.at(key).get<std::string>());
  }
  return out;
}

}  // namespace speechveil

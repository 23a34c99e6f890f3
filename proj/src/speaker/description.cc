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

#include "speechveil/speaker/description.h"

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"

namespace speechveil {
namespace {

std::string_view ChannelPhrase(const std::string& channel) {
  if (channel == "close-sound") return "close-sounding";
  if (channel == "distant-sound") return "distant-sounding";
  if (channel == "normal") return "of normal quality";
  return channel;  // clean, noisy
}

std::string_view Article(std::string_view word) {
  switch (word.empty() ? 'x' : word.front()) {
    case 'A': case 'E': case 'I': case 'O': case 'U':
      return "an";
    default:
      return "a";
  }
}

}  // namespace

std::string RenderDescription(const SpeakerAttributes& attributes,
                              const RenderOptions& options) {
  attributes.Validate();
  const std::string& gender = attributes.Get(Attribute::kGender);
  std::string subject;
  if (options.named_subject) {
    subject = *options.named_subject;
    if (attributes.accent) {
      const std::string& accent = attributes.Get(Attribute::kAccent);
      subject += fmt::format(", a {} speaker with {} {} accent,", gender,
                             Article(accent), accent);
    }
  } else if (attributes.accent) {
    const std::string& accent = attributes.Get(Attribute::kAccent);
    subject = fmt::format("a {} speaker with {} {} accent", gender,
                          Article(accent), accent);
  } else {
    subject = fmt::format("a {}", gender);
  }

  std::string voice = attributes.Get(Attribute::kPitch);
  const std::string& modulation = attributes.Get(Attribute::kPitchModulation);
  if (modulation != "empty") voice += " and " + modulation;

  return fmt::format(
      "{} reads a book {} with {} voice. The recording is {}.", subject,
      attributes.Get(Attribute::kSpeakingRate), voice,
      ChannelPhrase(attributes.Get(Attribute::kChannel)));
}

SpeakerAttributes SampleRandomAttributes(std::uint64_t seed) {
  SplitMix64 rng(seed);
  SpeakerAttributes out;
  for (Attribute attribute : kAllAttributes) {
    out.Set(attribute, static_cast<std::size_t>(
                           rng.Below(Vocabulary(attribute).size())));
  }
  return out;
}

SpeakerDescription Describe(const SpeakerAttributes& attributes,
                            std::string seed_trace,
                            const RenderOptions& options) {
  return {attributes, RenderDescription(attributes, options),
          std::move(seed_trace)};
}

SpeakerDescription SampleRandomDescription(std::uint64_t seed,
                                           const RenderOptions& options) {
  return Describe(SampleRandomAttributes(seed),
                  fmt::format("random/{}", HexDigest(seed)), options);
}

nlohmann::json SpeakerDescription::ToJson() const {
  return {{"attributes", attributes.ToJson()},
          {"rendered", rendered},
          {"seed_trace", seed_trace}};
}

SpeakerDescription SpeakerDescription::FromJson(const nlohmann::json& json) {
  SpeakerDescription out;
  out.attributes = SpeakerAttributes::FromJson(json.at("attributes"));
  out.rendered = json.at("rendered").get<std::string>();
  out.seed_trace = json.value("seed_trace", "");
  return out;
}

}  // namespace speechveil

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

#include "speechveil/backend/mock_world.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "speechveil/content/prompt.h"
#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"
#include "speechveil/core/text.h"
#include "speechveil/core/utf8.h"
#include "speechveil/speaker/description.h"

namespace speechveil {
namespace {

constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyz";
constexpr double kDescriptionOverlap = 0.4;
constexpr std::array<double, 5> kPitchHz = {85, 110, 150, 210, 260};
constexpr std::array<double, 5> kRateFactor = {0.6, 0.8, 1.0, 1.25, 1.5};

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

bool IsCorruptible(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
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

// Unit Gaussian direction over dims [begin, end) of a `dim`-vector.
std::vector<double> RandomDirection(std::uint64_t seed, int dim, int begin,
                                    int end) {
  SplitMix64 rng(seed);
  std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
  for (int i = begin; i < end; ++i) v[static_cast<std::size_t>(i)] = rng.Gaussian();
  return Normalized(std::move(v));
}

int SpeakerSubspace(int dim) { return dim * 2 / 3; }

std::size_t FindCaseless(std::string_view haystack, std::string_view needle,
                         std::size_t from) {
  const std::string h = ToLowerAscii(haystack);
  const std::string n = ToLowerAscii(needle);
  return h.find(n, from);
}

struct PromptEntity {
  std::string label;
  std::string surface;
};

std::string_view LineAfter(std::string_view prompt, std::string_view marker) {
  const std::size_t at = prompt.find(marker);
  if (at == std::string_view::npos) return {};
  const std::size_t begin = at + marker.size();
  const std::size_t end = prompt.find('\n', begin);
  return prompt.substr(begin, end == std::string_view::npos ? end : end - begin);
}

std::vector<PromptEntity> ParseEntityClauses(std::string_view line) {
  std::vector<PromptEntity> out;
  constexpr std::string_view kMarker = " entity '";
  std::size_t pos = 0;
  for (;;) {
    const std::size_t at = line.find(kMarker, pos);
    if (at == std::string_view::npos) break;
    const std::size_t label_begin = line.rfind(' ', at - 1) + 1;
    const std::size_t surface_begin = at + kMarker.size();
    std::size_t surface_end = line.find("'; ", surface_begin);
    if (surface_end == std::string_view::npos) surface_end = line.rfind("'.");
    if (surface_end == std::string_view::npos || surface_end < surface_begin) {
      break;
    }
    out.push_back({std::string(line.substr(label_begin, at - label_begin)),
                   std::string(line.substr(surface_begin,
                                           surface_end - surface_begin))});
    pos = surface_end + 1;
  }
  return out;
}

std::map<std::string, std::string> ParseMapping(std::string_view prompt) {
  std::map<std::string, std::string> mapping;
  const std::size_t at = prompt.find("\nMapping:\n");
  if (at == std::string_view::npos) return mapping;
  std::size_t pos = at + 10;
  while (pos < prompt.size() && prompt.substr(pos, 2) == "- ") {
    const std::size_t end = std::min(prompt.find('\n', pos), prompt.size());
    const std::string_view line = prompt.substr(pos + 2, end - pos - 2);
    const std::size_t arrow = line.find(" -> ");
    if (arrow != std::string_view::npos) {
      mapping.emplace(std::string(line.substr(0, arrow)),
                      std::string(line.substr(arrow + 4)));
    }
    pos = end + 1;
  }
  return mapping;
}

std::string Hash(std::string_view text) { return HexDigest(Fnv1a64(text)); }

}  // namespace

std::string DescriptionIdentityHash(std::string_view description) {
  return Hash(description);
}

MockWorldConfig MockWorldConfig::Default() {
  MockWorldConfig c;
  c.gazetteer = {
      {EntityLabel::kPerson,
       {"anna", "john", "maria", "peter", "sofia", "lukas", "elena", "marco",
        "julia", "tomas"}},
      {EntityLabel::kPlace,
       {"paris", "london", "berlin", "madrid", "lisbon", "vienna", "warsaw",
        "prague", "dublin", "rome"}},
      {EntityLabel::kOrg,
       {"the world bank", "the red cross", "nato", "unesco",
        "the central bank"}},
      {EntityLabel::kWhen,
       {"monday", "tuesday", "friday", "next week", "last year", "in march"}},
      {EntityLabel::kQuant,
       {"ten percent", "five million", "two hundred", "three thousand",
        "forty euros"}},
      {EntityLabel::kNorp, {"german", "french", "polish", "spanish", "greek"}},
      {EntityLabel::kLaw,
       {"the lisbon treaty", "the paris agreement", "the data act"}},
  };
  c.replacement_cycles = {
      {EntityLabel::kPerson, {"brian", "chloe", "omar", "ingrid"}},
      {EntityLabel::kPlace, {"lyon", "oslo", "quito", "perth"}},
      {EntityLabel::kOrg,
       {"the harbor fund", "the city council", "the chess league"}},
      {EntityLabel::kWhen, {"thursday", "next month", "sunday", "last winter"}},
      {EntityLabel::kQuant,
       {"four thousand", "nine percent", "twelve", "six hundred"}},
      {EntityLabel::kNorp, {"chilean", "kenyan", "nepali", "peruvian"}},
      {EntityLabel::kLaw,
       {"the harbor act", "the water charter", "the trade accord"}},
  };
  return c;
}

void MockWorldConfig::Validate() const {
  if (asr_char_error_rate < 0 || asr_char_error_rate > 1) {
    throw ConfigError("asr_char_error_rate must lie in [0, 1]");
  }
  if (embedding_noise < 0) throw ConfigError("embedding_noise must be >= 0");
  if (embedding_dim < 6) throw ConfigError("embedding_dim must be >= 6");
  if (!(tts_seconds_per_char > 0)) {
    throw ConfigError("tts_seconds_per_char must be positive");
  }
  if (sample_rate < 1000) throw ConfigError("sample_rate must be >= 1000");
  for (EntityLabel label : kAllEntityLabels) {
    const auto it = replacement_cycles.find(label);
    if (it == replacement_cycles.end() || it->second.empty()) {
      throw ConfigError(
          fmt::format("replacement cycle for {} is empty", ToString(label)));
    }
  }
}

nlohmann::json MockWorldConfig::ToJson() const {
  nlohmann::json gaz = nlohmann::json::object();
  nlohmann::json cycles = nlohmann::json::object();
  for (const auto& [label, words] : gazetteer) gaz[std::string(ToString(label))] = words;
  for (const auto& [label, words] : replacement_cycles) {
    cycles[std::string(ToString(label))] = words;
  }
  return {{"seed", seed},
          {"asr_char_error_rate", asr_char_error_rate},
          {"embedding_noise", embedding_noise},
          {"embedding_dim", embedding_dim},
          {"gazetteer", gaz},
          {"replacement_cycles", cycles},
          {"tts_seconds_per_char", tts_seconds_per_char},
          {"sample_rate", sample_rate}};
}

MockWorldConfig MockWorldConfig::FromJson(const nlohmann::json& json) {
  MockWorldConfig c = Default();
  try {
    c.seed = json.value("seed", c.seed);
    c.asr_char_error_rate = json.value("asr_char_error_rate", c.asr_char_error_rate);
    c.embedding_noise = json.value("embedding_noise", c.embedding_noise);
    c.embedding_dim = json.value("embedding_dim", c.embedding_dim);
    c.tts_seconds_per_char = json.value("tts_seconds_per_char", c.tts_seconds_per_char);
    c.sample_rate = json.value("sample_rate", c.sample_rate);
    const auto read_table = [](const nlohmann::json& table,
                               std::map<EntityLabel, std::vector<std::string>>* out) {
      out->clear();
      for (const auto& [key, words] : table.items()) {
        (*out)[ParseEntityLabel(key)] = words.get<std::vector<std::string>>();
      }
    };
    if (json.contains("gazetteer")) read_table(json["gazetteer"], &c.gazetteer);
    if (json.contains("replacement_cycles")) {
      read_table(json["replacement_cycles"], &c.replacement_cycles);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("mock world config: {}", e.what()));
  } catch (const ValidationError& e) {
    throw ConfigError(fmt::format("mock world config: {}", e.what()));
  }
  c.Validate();
  return c;
}

MockWorld::MockWorld(MockWorldConfig config, const DatasetManifest& manifest)
    : config_(std::move(config)) {
  config_.Validate();
  for (const Utterance& u : manifest.utterances()) by_reference_.emplace(u.audio_ref, u);
}

MockAudio MockWorld::ResolvePath(const std::string& path) const {
  const auto it = by_reference_.find(path);
  if (it != by_reference_.end()) {
    MockAudio audio;
    audio.original = &it->second;
    audio.reference = path;
    return audio;
  }
  return ResolveBytes(ReadBinaryFile(path));
}

MockAudio MockWorld::ResolveBytes(std::string_view wav_bytes) const {
  const WavAudio wav = DecodeWav(wav_bytes);
  nlohmann::json metadata = nlohmann::json::parse(wav.metadata, nullptr, false);
  if (metadata.is_discarded() || !metadata.is_object() ||
      !metadata.contains("identity_hash") || !metadata.contains("text")) {
    throw ValidationError("audio was not produced by the mock synthesizer");
  }
  MockAudio audio;
  audio.reference = fmt::format("synth/{}/{}",
                                metadata["identity_hash"].get<std::string>(),
                                Hash(metadata["text"].get<std::string>()));
  audio.metadata = std::move(metadata);
  return audio;
}

std::string MockWorld::Transcribe(const MockAudio& audio) const {
  std::string text;
  if (audio.original) {
    text = audio.original->reference_transcript.value_or("");
  } else {
    text = audio.metadata.at("text").get<std::string>();
  }
  if (config_.asr_char_error_rate <= 0) return text;
  SplitMix64 rng(DeriveSeed(config_.seed, "asr/" + audio.reference));
  for (char& c : text) {
    if (!IsCorruptible(c)) continue;
    if (rng.Uniform() >= config_.asr_char_error_rate) continue;
    char replacement = c;
    while (replacement == c) replacement = kLetters[rng.Below(kLetters.size())];
    c = replacement;
  }
  return text;
}

std::vector<EntitySpan> MockWorld::DetectEntities(const std::string& text) const {
  const std::string lower = ToLowerAscii(text);
  std::vector<EntitySpan> found;
  for (const auto& [label, phrases] : config_.gazetteer) {
    for (const std::string& phrase : phrases) {
      const std::string needle = ToLowerAscii(phrase);
      if (needle.empty()) continue;
      for (std::size_t at = lower.find(needle); at != std::string::npos;
           at = lower.find(needle, at + 1)) {
        const std::size_t end = at + needle.size();
        if (at > 0 && IsWordByte(lower[at - 1])) continue;
        if (end < lower.size() && IsWordByte(lower[end])) continue;
        const std::size_t start_char = utf8::Length(std::string_view(text).substr(0, at));
        found.push_back(MakeSpan(text, label, start_char,
                                 start_char + utf8::Length(phrase)));
      }
    }
  }
  return ResolveOverlaps(std::move(found));
}

std::string MockWorld::CycleReplacement(EntityLabel label,
                                        std::string_view surface) const {
  const std::vector<std::string>& cycle = config_.replacement_cycles.at(label);
  const std::string key = NormalizeKey(surface);
  const std::size_t start = Fnv1a64(key) % cycle.size();
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const std::string& candidate = cycle[(start + k) % cycle.size()];
    if (NormalizeKey(candidate) != key) return candidate;
  }
  return cycle[start];
}

std::string MockWorld::Complete(std::string_view prompt, MockLlmMode mode) const {
  std::string delimiter(kDefaultDelimiter);
  constexpr std::string_view kFormat =
      "Output format: Return only the rewritten sentence between ";
  if (const std::size_t at = prompt.find(kFormat); at != std::string_view::npos) {
    const std::size_t begin = at + kFormat.size();
    const std::size_t end = prompt.find(" and ", begin);
    if (end != std::string_view::npos) {
      delimiter = std::string(prompt.substr(begin, end - begin));
    }
  }
  const std::size_t sentence_at = prompt.find("\nSentence: ");
  if (sentence_at == std::string_view::npos) {
    throw ValidationError("prompt has no sentence to rewrite");
  }
  std::string sentence;
  try {
    sentence = ExtractFenced(prompt.substr(sentence_at), delimiter);
  } catch (const ParseError& e) {
    throw ValidationError(fmt::format("prompt sentence is not fenced: {}", e.what()));
  }

  std::string rewritten;
  if (mode == MockLlmMode::kEcho) {
    rewritten = sentence;
  } else {
    const auto entities = ParseEntityClauses(LineAfter(prompt, "\nEntities: "));
    const auto mapping = ParseMapping(prompt);
    std::size_t cursor = 0;
    for (const PromptEntity& entity : entities) {
      const auto label = TryParseEntityLabel(entity.label);
      if (!label || entity.surface.empty()) continue;
      std::size_t at = sentence.find(entity.surface, cursor);
      if (at == std::string::npos) at = FindCaseless(sentence, entity.surface, cursor);
      if (at == std::string::npos) continue;
      std::string replacement;
      if (const auto it = mapping.find(entity.surface); it != mapping.end()) {
        replacement = it->second;
      } else if (const auto jt = mapping.find(entity.label); jt != mapping.end()) {
        replacement = jt->second;
      } else {
        replacement = CycleReplacement(*label, entity.surface);
      }
      rewritten.append(sentence, cursor, at - cursor);
      rewritten += replacement;
      cursor = at + entity.surface.size();
    }
    rewritten.append(sentence, cursor, std::string::npos);
  }

  if (mode == MockLlmMode::kMalformed) {
    return "Sure! Here is the rewritten sentence: " + rewritten;
  }
  try {
    return FencePayload(rewritten, delimiter);
  } catch (const PromptError&) {
    return delimiter + rewritten + delimiter;
  }
}

WavAudio MockWorld::Synthesize(
    const std::string& text, const std::string& description,
    const std::optional<SpeakerAttributes>& attributes) const {
  if (TrimAscii(text).empty()) throw ValidationError("cannot synthesize empty text");
  SpeakerAttributes attrs;
  attrs.Set(Attribute::kPitch, "normal");
  attrs.Set(Attribute::kSpeakingRate, "normally");
  attrs.Set(Attribute::kChannel, "normal");
  if (attributes) attrs = *attributes;
  attrs.Validate();

  const std::string identity = DescriptionIdentityHash(description);
  const double f0 = kPitchHz[attrs.pitch];
  const double rate = kRateFactor[attrs.speaking_rate];
  const std::string& channel = attrs.Get(Attribute::kChannel);
  const double seconds = std::max(
      0.05, static_cast<double>(utf8::Length(text)) * config_.tts_seconds_per_char / rate);

  WavAudio wav;
  wav.sample_rate = config_.sample_rate;
  const auto n = static_cast<std::size_t>(std::llround(seconds * wav.sample_rate));
  wav.samples.resize(n);
  const double amplitude = channel == "distant-sound" ? 0.15 : 0.3;
  SplitMix64 noise(DeriveSeed(config_.seed, "tts/" + identity + "/" + Hash(text)));
  for (std::size_t i = 0; i < n; ++i) {
    double x = amplitude * std::sin(2 * std::numbers::pi * f0 *
                                    static_cast<double>(i) / wav.sample_rate);
    if (channel == "noisy") x += 0.05 * noise.Gaussian();
    x = std::clamp(x, -1.0, 1.0);
    wav.samples[i] = static_cast<std::int16_t>(std::lround(x * 32767));
  }
  const nlohmann::json metadata = {
      {"model", "mock-tts"},
      {"identity_hash", identity},
      {"description", description},
      {"text", text},
      {"pitch", attrs.Get(Attribute::kPitch)},
      {"speaking_rate", attrs.Get(Attribute::kSpeakingRate)},
      {"channel", channel},
      {"f0_hz", f0},
      {"sample_rate", wav.sample_rate},
      {"duration_seconds", wav.DurationSeconds()}};
  wav.metadata = metadata.dump();
  return wav;
}

std::vector<double> MockWorld::SpeakerVector(const std::string& speaker_id) const {
  return RandomDirection(DeriveSeed(config_.seed, "speaker/" + speaker_id),
                         config_.embedding_dim, 0,
                         SpeakerSubspace(config_.embedding_dim));
}

std::vector<double> MockWorld::DescriptionVector(
    const std::string& identity_hash) const {
  const int dim = config_.embedding_dim;
  const std::vector<double> u = RandomDirection(
      DeriveSeed(config_.seed, "description/shared/" + identity_hash), dim, 0,
      SpeakerSubspace(dim));
  const std::vector<double> w = RandomDirection(
      DeriveSeed(config_.seed, "description/own/" + identity_hash), dim,
      SpeakerSubspace(dim), dim);
  // u and w are orthogonal unit vectors, so the cosine to any speaker vector
  // is kDescriptionOverlap * <u, s> and never exceeds kDescriptionOverlap.
  const double b = std::sqrt(1 - kDescriptionOverlap * kDescriptionOverlap);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = kDescriptionOverlap * u[i] + b * w[i];
  return v;
}

std::vector<double> MockWorld::Embed(const MockAudio& audio) const {
  std::vector<double> v =
      audio.original
          ? SpeakerVector(audio.original->speaker_id)
          : DescriptionVector(audio.metadata.at("identity_hash").get<std::string>());
  if (config_.embedding_noise > 0) {
    SplitMix64 rng(DeriveSeed(config_.seed, "embed/" + audio.reference));
    const double sigma =
        config_.embedding_noise / std::sqrt(static_cast<double>(v.size()));
    for (double& x : v) x += sigma * rng.Gaussian();
    v = Normalized(std::move(v));
  }
  return v;
}

double MockWorld::PredictMos(const MockAudio& audio) const {
  if (audio.original) return 4.5;
  const std::string channel = audio.metadata.value("channel", "normal");
  if (channel == "clean") return 4.4;
  if (channel == "close-sound") return 4.3;
  if (channel == "distant-sound") return 4.0;
  if (channel == "noisy") return 3.6;
  return 4.2;
}

}  // namespace speechveil

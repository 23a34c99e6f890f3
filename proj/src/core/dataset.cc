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

#include "speechveil/core/dataset.h"

#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"

namespace speechveil {
namespace {

std::vector<Utterance> Deduplicate(const std::vector<Utterance>& utterances,
                                   const std::set<std::string>* speakers) {
  std::vector<Utterance> kept;
  std::unordered_set<std::string> seen;
  for (const Utterance& u : utterances) {
    if (speakers && !speakers->contains(u.speaker_id)) continue;
    if (!u.reference_transcript) {
      throw ValidationError(fmt::format(
          "utterance '{}' has no reference transcript; deduplication needs one",
          u.id));
    }
    if (seen.insert(NormalizeKey(*u.reference_transcript)).second) {
      kept.push_back(u);
    }
  }
  return kept;
}

std::set<std::string> SpeakersWithAtLeast(
    const std::vector<Utterance>& utterances, std::size_t min_utts) {
  std::map<std::string, std::size_t> counts;
  for (const Utterance& u : utterances) ++counts[u.speaker_id];
  std::set<std::string> speakers;
  for (const auto& [speaker, count] : counts) {
    if (count >= min_utts) speakers.insert(speaker);
  }
  return speakers;
}

std::vector<Utterance> KeepSpeakers(const std::vector<Utterance>& utterances,
                                    const std::set<std::string>& speakers) {
  std::vector<Utterance> kept;
  for (const Utterance& u : utterances) {
    if (speakers.contains(u.speaker_id)) kept.push_back(u);
  }
  return kept;
}

}  // namespace

FilterResult FilterDataset(const DatasetManifest& manifest,
                           const FilterOptions& options) {
  if (options.min_utts < 1) {
    throw ValidationError("min_utts must be at least 1");
  }
  const std::vector<Utterance>& all = manifest.utterances();

  std::vector<Utterance> deduped;
  std::set<std::string> speakers;
  if (!options.to_fixpoint) {
    deduped = Deduplicate(all, nullptr);
    speakers = SpeakersWithAtLeast(deduped, options.min_utts);
  } else {
    // Start from speakers that reach the threshold before deduplication, so
    // a transcript first uttered by a dropped speaker can count for another.
    speakers = SpeakersWithAtLeast(all, options.min_utts);
    for (;;) {
      deduped = Deduplicate(all, &speakers);
      std::set<std::string> next =
          SpeakersWithAtLeast(deduped, options.min_utts);
      if (next == speakers) break;
      speakers = std::move(next);
    }
  }
  std::vector<Utterance> kept = KeepSpeakers(deduped, speakers);

  FilterResult result;
  result.input_speakers = manifest.SpeakerCount();
  result.input_utterances = manifest.size();
  result.duplicates_removed = all.size() - Deduplicate(all, nullptr).size();
  result.manifest = DatasetManifest(std::move(kept), manifest.provenance());
  result.speaker_count = result.manifest.SpeakerCount();
  result.utterance_count = result.manifest.size();
  result.speakers_dropped = result.input_speakers - result.speaker_count;
  return result;
}

nlohmann::json ToJson(const EntitySpan& span) {
  nlohmann::json out = {{"label", ToString(span.label)},
                        {"char_start", span.char_start},
                        {"char_end", span.char_end},
                        {"surface", span.surface}};
  if (span.time_start) out["time_start"] = *span.time_start;
  if (span.time_end) out["time_end"] = *span.time_end;
  return out;
}

EntitySpan SpanFromJson(const nlohmann::json& record, std::string_view text) {
  if (!record.is_object()) throw ValidationError("span must be an object");
  try {
    EntitySpan span = MakeSpan(
        text, ParseEntityLabel(record.at("label").get<std::string>()),
        record.at("char_start").get<std::size_t>(),
        record.at("char_end").get<std::size_t>());
    if (record.contains("surface") &&
        record["surface"].get<std::string>() != span.surface) {
      throw ValidationError(fmt::format(
          "span surface '{}' does not match text slice '{}'",
          record["surface"].get<std::string>(), span.surface));
    }
    if (record.contains("time_start") && !record["time_start"].is_null()) {
      span.time_start = record["time_start"].get<double>();
    }
    if (record.contains("time_end") && !record["time_end"].is_null()) {
      span.time_end = record["time_end"].get<double>();
    }
    return span;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed span: {}", e.what()));
  }
}

nlohmann::json ToJson(const Utterance& u) {
  nlohmann::json out = {
      {"id", u.id}, {"speaker_id", u.speaker_id}, {"audio_ref", u.audio_ref}};
  out["transcript"] = u.reference_transcript
                          ? nlohmann::json(*u.reference_transcript)
                          : nlohmann::json(nullptr);
  if (u.gold_spans) {
    nlohmann::json spans = nlohmann::json::array();
    for (const EntitySpan& span : *u.gold_spans) spans.push_back(ToJson(span));
    out["entities"] = std::move(spans);
  }
  return out;
}

Utterance UtteranceFromJson(const nlohmann::json& record) {
  if (!record.is_object()) {
    throw ValidationError("manifest record must be a JSON object");
  }
  try {
    Utterance u;
    u.id = record.at("id").get<std::string>();
    u.speaker_id = record.at("speaker_id").get<std::string>();
    u.audio_ref = record.at("audio_ref").get<std::string>();
    if (record.contains("transcript") && !record["transcript"].is_null()) {
      u.reference_transcript = record["transcript"].get<std::string>();
    }
    if (record.contains("entities") && !record["entities"].is_null()) {
      if (!u.reference_transcript) {
        throw ValidationError(fmt::format(
            "utterance '{}' has entities but no transcript", u.id));
      }
      std::vector<EntitySpan> spans;
      for (const auto& item : record["entities"]) {
        spans.push_back(SpanFromJson(item, *u.reference_transcript));
      }
      // Gold annotations go through the same canonical form as NER output.
      u.gold_spans = AnnotatedTranscript::WithResolvedSpans(
                         *u.reference_transcript, std::move(spans))
                         .spans();
    }
    return u;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed manifest record: {}",
                                      e.what()));
  }
}

DatasetManifest ParseManifest(std::istream& in, std::string provenance) {
  std::vector<Utterance> utterances;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (TrimAscii(line).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(fmt::format("manifest line {}: {}", line_number,
                                        e.what()));
    }
    try {
      utterances.push_back(UtteranceFromJson(record));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("manifest line {}: {}", line_number,
                                        e.what()));
    }
  }
  return DatasetManifest(std::move(utterances), std::move(provenance));
}

DatasetManifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot read manifest '{}'", path.string()));
  }
  return ParseManifest(in, path.string());
}

void WriteManifest(const DatasetManifest& manifest, std::ostream& out) {
  for (const Utterance& u : manifest.utterances()) {
    out << ToJson(u).dump() << '\n';
  }
}

}  // namespace speechveil

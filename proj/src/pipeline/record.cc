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

#include "speechveil/pipeline/record.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "speechveil/backend/audio.h"
#include "speechveil/core/dataset.h"
#include "speechveil/core/errors.h"

namespace speechveil {

namespace {

nlohmann::json OptionalString(const std::optional<std::string>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json();
}

std::optional<std::string> ReadOptionalString(const nlohmann::json& json,
                                              const char* key) {
  if (!json.contains(key) || json[key].is_null()) return std::nullopt;
  return json[key].get<std::string>();
}

}  // namespace

nlohmann::json AnonymizationRecord::ToJson() const {
  nlohmann::json spans = nlohmann::json::array();
  for (const EntitySpan& s : hypothesis.spans()) spans.push_back(speechveil::ToJson(s));
  nlohmann::json plan_json = nlohmann::json::array();
  for (const PlannedReplacement& p : plan.entries) {
    nlohmann::json entry = speechveil::ToJson(p.span);
    entry["replacement"] = p.replacement;
    entry["unchanged"] = p.unchanged;
    plan_json.push_back(std::move(entry));
  }
  nlohmann::json verdict_json = nlohmann::json::array();
  for (const ReplacementVerdict& v : verdicts) {
    nlohmann::json entry = speechveil::ToJson(v.span);
    entry["replacement"] = OptionalString(v.replacement);
    entry["correct"] = v.correct;
    entry["reason"] = v.reason;
    verdict_json.push_back(std::move(entry));
  }
  nlohmann::json out = {
      {"utterance_id", utterance_id},
      {"speaker_id", speaker_id},
      {"source_audio", source_audio},
      {"status", ok() ? "ok" : "failed"},
      {"failed_stage", OptionalString(failed_stage)},
      {"error", OptionalString(error)},
      {"hypothesis", hypothesis.text()},
      {"spans", spans},
      {"llm_attempts", llm_attempts},
      {"llm_failure", OptionalString(llm_failure)},
      {"plan", plan_json},
      {"sanitized", sanitized},
      {"verdicts", verdict_json},
      {"replaced_correct", replaced_correct},
      {"audio_ref", audio_ref},
      {"identity_hash", identity_hash},
  };
  out["description"] = description ? description->ToJson() : nlohmann::json();
  out["grid"] = grid ? nlohmann::json{{"combo_index", grid->combo_index},
                                      {"utterance_slot", grid->utterance_slot}}
                     : nlohmann::json();
  return out;
}

AnonymizationRecord AnonymizationRecord::FromJson(const nlohmann::json& json) {
  AnonymizationRecord r;
  try {
    r.utterance_id = json.at("utterance_id").get<std::string>();
    r.speaker_id = json.at("speaker_id").get<std::string>();
    r.source_audio = json.value("source_audio", "");
    const std::string status = json.at("status").get<std::string>();
    if (status != "ok" && status != "failed") {
      throw ValidationError(fmt::format("unknown record status '{}'", status));
    }
    r.status = status == "ok" ? RecordStatus::kOk : RecordStatus::kFailed;
    r.failed_stage = ReadOptionalString(json, "failed_stage");
    r.error = ReadOptionalString(json, "error");
    const std::string text = json.value("hypothesis", "");
    std::vector<EntitySpan> spans;
    for (const auto& s : json.value("spans", nlohmann::json::array())) {
      spans.push_back(SpanFromJson(s, text));
    }
    r.hypothesis = AnnotatedTranscript(text, std::move(spans));
    r.llm_attempts = json.value("llm_attempts", 0);
    r.llm_failure = ReadOptionalString(json, "llm_failure");
    r.plan.transcript_id = r.utterance_id;
    for (const auto& p : json.value("plan", nlohmann::json::array())) {
      r.plan.entries.push_back({SpanFromJson(p, text),
                                p.at("replacement").get<std::string>(),
                                p.value("unchanged", false)});
    }
    r.sanitized = json.value("sanitized", "");
    for (const auto& v : json.value("verdicts", nlohmann::json::array())) {
      ReplacementVerdict verdict;
      verdict.span = SpanFromJson(v, text);
      verdict.replacement = ReadOptionalString(v, "replacement");
      verdict.correct = v.at("correct").get<bool>();
      verdict.reason = v.value("reason", "");
      r.verdicts.push_back(std::move(verdict));
    }
    r.replaced_correct = json.value("replaced_correct", std::size_t{0});
    if (json.contains("description") && !json["description"].is_null()) {
      r.description = SpeakerDescription::FromJson(json["description"]);
    }
    if (json.contains("grid") && !json["grid"].is_null()) {
      r.grid = GridSlot{json["grid"].at("combo_index").get<std::size_t>(),
                        json["grid"].at("utterance_slot").get<std::size_t>()};
    }
    r.audio_ref = json.value("audio_ref", "");
    r.identity_hash = json.value("identity_hash", "");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed record: {}", e.what()));
  }
  return r;
}

nlohmann::json AnonymizationRecord::TimingsJson() const {
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& [stage, ms] : timings) stages[stage] = ms;
  return {{"utterance_id", utterance_id}, {"stages_ms", stages}};
}

namespace {

std::vector<const AnonymizationRecord*> SortedById(
    const std::vector<AnonymizationRecord>& records) {
  std::vector<const AnonymizationRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->utterance_id < b->utterance_id;
  });
  return sorted;
}

}  // namespace

void WriteRecords(const std::vector<AnonymizationRecord>& records,
                  const std::filesystem::path& path) {
  std::string out;
  for (const auto* r : SortedById(records)) out += r->ToJson().dump() + "\n";
  WriteBinaryFile(path, out);
}

std::vector<AnonymizationRecord> ReadRecords(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError(fmt::format("records file '{}' not found", path.string()));
  }
  std::ifstream in(path);
  std::vector<AnonymizationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(AnonymizationRecord::FromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(
          fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return out;
}

void WriteTimings(const std::vector<AnonymizationRecord>& records,
                  const std::filesystem::path& path) {
  std::string out;
  for (const auto* r : SortedById(records)) out += r->TimingsJson().dump() + "\n";
  WriteBinaryFile(path, out);
}

}  // namespace speechveil

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

#include "speechveil/content/policy.h"

#include <fstream>

#include <fmt/format.h>

#include "speechveil/core/errors.h"

namespace speechveil {

std::string_view ToString(ReplacementMode mode) {
  return mode == ReplacementMode::kDissimilar ? "DISSIMILAR" : "FIXED_MAPPING";
}

ReplacementMode ParseReplacementMode(std::string_view name) {
  if (name == "DISSIMILAR") return ReplacementMode::kDissimilar;
  if (name == "FIXED_MAPPING") return ReplacementMode::kFixedMapping;
  throw ValidationError(fmt::format("unknown replacement mode '{}'", name));
}

ReplacementPolicy ReplacementPolicy::Default() {
  ReplacementPolicy policy;
  policy.few_shot_examples = {
      {"john flew to london on monday", "peter flew to madrid on friday"},
      {"the world bank lent ten million to poland",
       "the harbor fund lent four thousand to chile"},
  };
  return policy;
}

void ReplacementPolicy::Validate() const {
  if (delimiter.empty()) throw ValidationError("delimiter must be non-empty");
  if (mode == ReplacementMode::kFixedMapping && mapping.empty()) {
    throw ValidationError("FIXED_MAPPING policy requires a non-empty mapping");
  }
  for (const MappingEntry& entry : mapping) {
    if (entry.key.empty() || entry.replacement.empty()) {
      throw ValidationError("mapping entries need a key and a replacement");
    }
  }
  for (const FewShotExample& example : few_shot_examples) {
    if (example.input.find(delimiter) != std::string::npos ||
        example.output.find(delimiter) != std::string::npos) {
      throw ValidationError(fmt::format(
          "few-shot example contains the delimiter '{}'", delimiter));
    }
  }
}

nlohmann::json ReplacementPolicy::ToJson() const {
  nlohmann::json out;
  out["mode"] = ToString(mode);
  out["mapping"] = nlohmann::json::array();
  for (const MappingEntry& entry : mapping) {
    out["mapping"].push_back(
        {{"key", entry.key}, {"replacement", entry.replacement}});
  }
  out["few_shot_examples"] = nlohmann::json::array();
  for (const FewShotExample& example : few_shot_examples) {
    out["few_shot_examples"].push_back(
        {{"input", example.input}, {"output", example.output}});
  }
  out["delimiter"] = delimiter;
  return out;
}

ReplacementPolicy ReplacementPolicy::FromJson(const nlohmann::json& json) {
  ReplacementPolicy policy = Default();
  try {
    if (json.contains("mode")) {
      policy.mode = ParseReplacementMode(json["mode"].get<std::string>());
    }
    if (json.contains("mapping")) {
      policy.mapping.clear();
      const auto& mapping = json["mapping"];
      // Accept both [{key, replacement}] and {"PERSON": "alex"}.
      if (mapping.is_object()) {
        for (const auto& [key, value] : mapping.items()) {
          policy.mapping.push_back({key, value.get<std::string>()});
        }
      } else {
        for (const auto& item : mapping) {
          policy.mapping.push_back({item.at("key").get<std::string>(),
                                    item.at("replacement").get<std::string>()});
        }
      }
    }
    if (json.contains("few_shot_examples")) {
      policy.few_shot_examples.clear();
      for (const auto& item : json["few_shot_examples"]) {
        policy.few_shot_examples.push_back(
            {item.at("input").get<std::string>(),
             item.at("output").get<std::string>()});
      }
    }
    if (json.contains("delimiter")) {
      policy.delimiter = json["delimiter"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed replacement policy: {}",
                                      e.what()));
  }
  policy.Validate();
  return policy;
}

ReplacementPolicy ReplacementPolicy::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot read policy '{}'", path.string()));
  }
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("policy '{}': {}", path.string(), e.what()));
  }
}

}  // namespace speechveil

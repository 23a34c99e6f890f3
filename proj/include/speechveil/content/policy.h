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

#ifndef SPEECHVEIL_CONTENT_POLICY_H_
#define SPEECHVEIL_CONTENT_POLICY_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace speechveil {

enum class ReplacementMode { kDissimilar, kFixedMapping };

std::string_view ToString(ReplacementMode mode);
ReplacementMode ParseReplacementMode(std::string_view name);

// `key` is either an entity label name (PERSON) or a surface form (paris).
struct MappingEntry {
  std::string key;
  std::string replacement;
  friend bool operator==(const MappingEntry&, const MappingEntry&) = default;
};

struct FewShotExample {
  std::string input;
  std::string output;
  friend bool operator==(const FewShotExample&,
                         const FewShotExample&) = default;
};

inline constexpr std::string_view kDefaultDelimiter = "####";

struct ReplacementPolicy {
  ReplacementMode mode = ReplacementMode::kDissimilar;
  std::vector<MappingEntry> mapping;
  std::vector<FewShotExample> few_shot_examples;
  std::string delimiter{kDefaultDelimiter};

  // Dissimilar-word replacement with the built-in examples.
  static ReplacementPolicy Default();

  // Throws ValidationError when FIXED_MAPPING has no mapping, the delimiter
  // is empty, or a few-shot payload contains the delimiter.
  void Validate() const;

  nlohmann::json ToJson() const;
  static ReplacementPolicy FromJson(const nlohmann::json& json);
  static ReplacementPolicy Load(const std::filesystem::path& path);

  friend bool operator==(const ReplacementPolicy&,
                         const ReplacementPolicy&) = default;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_CONTENT_POLICY_H_

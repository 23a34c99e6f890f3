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

#ifndef SPEECHVEIL_PIPELINE_RUN_CONFIG_H_
#define SPEECHVEIL_PIPELINE_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "speechveil/backend/endpoint.h"
#include "speechveil/backend/mock_world.h"
#include "speechveil/content/policy.h"
#include "speechveil/speaker/attributes.h"

namespace speechveil {

enum class DescriptionSource { kRandom, kGrid, kFixed };
std::string_view ToString(DescriptionSource source);
DescriptionSource ParseDescriptionSource(std::string_view name);

enum class EnrollmentMode {
  kMean,    // mean of the speaker's other originals
  kSingle,  // first other original in id order
};
std::string_view ToString(EnrollmentMode mode);
EnrollmentMode ParseEnrollmentMode(std::string_view name);

struct GridSettings {
  std::optional<Attribute> attribute;      // required for kGrid runs
  std::optional<std::string> subcategory;  // required for kGrid runs
  std::size_t combos = 40;
  std::size_t utterances_per_combo = 10;
};

struct RunConfig {
  std::filesystem::path manifest;
  EndpointSet endpoints = EndpointSet::AllMock();
  ReplacementPolicy policy = ReplacementPolicy::Default();
  DescriptionSource description_source = DescriptionSource::kRandom;
  std::optional<SpeakerAttributes> fixed_description;
  GridSettings grid;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  int parallelism = 4;
  int llm_attempts = 3;
  EnrollmentMode enrollment = EnrollmentMode::kMean;
  // Keep only the first `limit` utterances of the manifest.
  std::optional<std::size_t> limit;
  MockWorldConfig mock_world = MockWorldConfig::Default();

  // Structural checks; throws ConfigError.
  void Validate() const;
  // Also requires the manifest file to exist.
  void ValidateFiles() const;

  nlohmann::json ToJson() const;
  // "endpoints" and "policy" may be inline objects or paths. Relative paths
  // resolve against `base_dir`.
  static RunConfig FromJson(const nlohmann::json& json,
                            const std::filesystem::path& base_dir = {});
  static RunConfig Load(const std::filesystem::path& path);

  // Digest of everything except output_dir.
  std::string Hash() const;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_PIPELINE_RUN_CONFIG_H_

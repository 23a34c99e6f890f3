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

#include "speechveil/pipeline/run_config.h"

#include <fstream>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"

namespace speechveil {

std::string_view ToString(DescriptionSource source) {
  switch (source) {
    case DescriptionSource::kRandom: return "random";
    case DescriptionSource::kGrid: return "grid";
    case DescriptionSource::kFixed: return "fixed";
  }
  return "random";
}

DescriptionSource ParseDescriptionSource(std::string_view name) {
  if (name == "random") return DescriptionSource::kRandom;
  if (name == "grid") return DescriptionSource::kGrid;
  if (name == "fixed") return DescriptionSource::kFixed;
  throw ConfigError(fmt::format("unknown description source '{}'", name));
}

std::string_view ToString(EnrollmentMode mode) {
  return mode == EnrollmentMode::kMean ? "mean" : "single";
}

EnrollmentMode ParseEnrollmentMode(std::string_view name) {
  if (name == "mean") return EnrollmentMode::kMean;
  if (name == "single") return EnrollmentMode::kSingle;
  throw ConfigError(fmt::format("unknown enrollment mode '{}'", name));
}

void RunConfig::Validate() const {
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
  if (llm_attempts < 1) throw ConfigError("llm_attempts must be at least 1");
  if (grid.combos == 0 || grid.utterances_per_combo == 0) {
    throw ConfigError("grid sizes must be at least 1");
  }
  if (limit && *limit == 0) throw ConfigError("limit must be at least 1");
  for (BackendKind kind : kAllBackendKinds) {
    if (!endpoints.Has(kind)) {
      throw ConfigError(fmt::format("no endpoint configured for {}", ToString(kind)));
    }
    endpoints.Get(kind).Validate();
  }
  try {
    policy.Validate();
    mock_world.Validate();
    if (fixed_description) fixed_description->Validate();
    if (grid.attribute && grid.subcategory) {
      ValueIndex(*grid.attribute, *grid.subcategory);
    }
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  if (description_source == DescriptionSource::kFixed && !fixed_description) {
    throw ConfigError("description_source 'fixed' needs fixed_description");
  }
  if (description_source == DescriptionSource::kGrid &&
      (!grid.attribute || !grid.subcategory)) {
    throw ConfigError("description_source 'grid' needs grid.attribute and grid.subcategory");
  }
}

void RunConfig::ValidateFiles() const {
  Validate();
  if (manifest.empty()) throw ConfigError("no manifest configured");
  if (!std::filesystem::is_regular_file(manifest)) {
    throw ConfigError(fmt::format("manifest '{}' does not exist", manifest.string()));
  }
}

nlohmann::json RunConfig::ToJson() const {
  nlohmann::json grid_json = {{"combos", grid.combos},
                              {"utterances_per_combo", grid.utterances_per_combo}};
  grid_json["attribute"] =
      grid.attribute ? nlohmann::json(ToString(*grid.attribute)) : nlohmann::json();
  grid_json["subcategory"] =
      grid.subcategory ? nlohmann::json(*grid.subcategory) : nlohmann::json();
  nlohmann::json out = {
      {"manifest", manifest.generic_string()},
      {"endpoints", endpoints.ToJson()},
      {"policy", policy.ToJson()},
      {"description_source", ToString(description_source)},
      {"grid", grid_json},
      {"seed", seed},
      {"output_dir", output_dir.generic_string()},
      {"parallelism", parallelism},
      {"llm_attempts", llm_attempts},
      {"enrollment", ToString(enrollment)},
      {"mock_world", mock_world.ToJson()},
  };
  out["fixed_description"] =
      fixed_description ? fixed_description->ToJson() : nlohmann::json();
  out["limit"] = limit ? nlohmann::json(*limit) : nlohmann::json();
  return out;
}

namespace {

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  if (p.empty()) return p;
  if (p.is_relative() && !base.empty()) p = base / p;
  return std::filesystem::absolute(p).lexically_normal();
}

}  // namespace

RunConfig RunConfig::FromJson(const nlohmann::json& json,
                              const std::filesystem::path& base_dir) {
  if (!json.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig cfg;
  try {
    if (json.contains("manifest") && !json["manifest"].is_null()) {
      cfg.manifest = Resolve(base_dir, json["manifest"].get<std::string>());
    }
    if (json.contains("endpoints")) {
      const auto& e = json["endpoints"];
      cfg.endpoints = e.is_string() ? EndpointSet::Load(Resolve(base_dir, e.get<std::string>()))
                                    : EndpointSet::FromJson(e);
    }
    if (json.contains("policy")) {
      const auto& p = json["policy"];
      cfg.policy = p.is_string()
                       ? ReplacementPolicy::Load(Resolve(base_dir, p.get<std::string>()))
                       : ReplacementPolicy::FromJson(p);
    }
    if (json.contains("description_source")) {
      cfg.description_source =
          ParseDescriptionSource(json["description_source"].get<std::string>());
    }
    if (json.contains("fixed_description") && !json["fixed_description"].is_null()) {
      cfg.fixed_description = SpeakerAttributes::FromJson(json["fixed_description"]);
    }
    if (json.contains("grid")) {
      const auto& g = json["grid"];
      if (g.contains("attribute") && !g["attribute"].is_null()) {
        cfg.grid.attribute = ParseAttribute(g["attribute"].get<std::string>());
      }
      if (g.contains("subcategory") && !g["subcategory"].is_null()) {
        cfg.grid.subcategory = g["subcategory"].get<std::string>();
      }
      cfg.grid.combos = g.value("combos", cfg.grid.combos);
      cfg.grid.utterances_per_combo =
          g.value("utterances_per_combo", cfg.grid.utterances_per_combo);
    }
    cfg.seed = json.value("seed", cfg.seed);
    if (json.contains("output_dir") && !json["output_dir"].is_null()) {
      cfg.output_dir = Resolve(base_dir, json["output_dir"].get<std::string>());
    }
    cfg.parallelism = json.value("parallelism", cfg.parallelism);
    cfg.llm_attempts = json.value("llm_attempts", cfg.llm_attempts);
    if (json.contains("enrollment")) {
      cfg.enrollment = ParseEnrollmentMode(json["enrollment"].get<std::string>());
    }
    if (json.contains("limit") && !json["limit"].is_null()) {
      cfg.limit = json["limit"].get<std::size_t>();
    }
    if (json.contains("mock_world")) {
      cfg.mock_world = MockWorldConfig::FromJson(json["mock_world"]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("run config: {}", e.what()));
  } catch (const ValidationError& e) {
    throw ConfigError(fmt::format("run config: {}", e.what()));
  }
  cfg.Validate();
  return cfg;
}

RunConfig RunConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
  }
  return FromJson(json, path.parent_path());
}

std::string RunConfig::Hash() const {
  nlohmann::json json = ToJson();
  json.erase("output_dir");
  return HexDigest(Fnv1a64(json.dump()));
}

}  // namespace speechveil

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

#include "speechveil/backend/endpoint.h"

#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"

namespace speechveil {
namespace {

std::optional<std::string> Env(BackendKind kind, std::string_view suffix) {
  const std::string name = fmt::format(
      "SPEECHVEIL_{}_{}", ToUpperAscii(ToString(kind)), suffix);
  const char* value = std::getenv(name.c_str());
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

template <typename T>
T ParseNumber(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_integral_v<T>) {
      value = static_cast<T>(std::stol(text, &used));
    } else {
      value = static_cast<T>(std::stod(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("invalid {} '{}'", what, text));
  }
}

}  // namespace

std::string_view ToString(BackendKind kind) {
  switch (kind) {
    case BackendKind::kAsr: return "asr";
    case BackendKind::kNer: return "ner";
    case BackendKind::kLlm: return "llm";
    case BackendKind::kTts: return "tts";
    case BackendKind::kEmbed: return "embed";
    case BackendKind::kMos: return "mos";
  }
  return "unknown";
}

BackendKind ParseBackendKind(std::string_view name) {
  for (BackendKind kind : kAllBackendKinds) {
    if (ToString(kind) == name) return kind;
  }
  throw ConfigError(fmt::format("unknown backend kind '{}'", name));
}

std::string_view Route(BackendKind kind) {
  switch (kind) {
    case BackendKind::kAsr: return "/v1/asr";
    case BackendKind::kNer: return "/v1/ner";
    case BackendKind::kLlm: return "/v1/complete";
    case BackendKind::kTts: return "/v1/tts";
    case BackendKind::kEmbed: return "/v1/embed";
    case BackendKind::kMos: return "/v1/mos";
  }
  return "";
}

std::optional<BackendKind> KindForRoute(std::string_view route) {
  for (BackendKind kind : kAllBackendKinds) {
    if (Route(kind) == route) return kind;
  }
  return std::nullopt;
}

void BackendEndpoint::Validate() const {
  if (url.empty()) {
    throw ConfigError(fmt::format("{} endpoint has no url", ToString(kind)));
  }
  if (!IsMock() && url.rfind("http://", 0) != 0 &&
      url.rfind("https://", 0) != 0) {
    throw ConfigError(fmt::format("{} endpoint url '{}' must be http(s):// or "
                                  "mock:<name>",
                                  ToString(kind), url));
  }
  if (max_retries < 0) {
    throw ConfigError(fmt::format("{} max_retries must be >= 0", ToString(kind)));
  }
  if (concurrency < 1) {
    throw ConfigError(fmt::format("{} concurrency must be >= 1", ToString(kind)));
  }
  if (!(timeout_seconds > 0)) {
    throw ConfigError(fmt::format("{} timeout must be positive", ToString(kind)));
  }
  if (backoff_ms < 0) {
    throw ConfigError(fmt::format("{} backoff_ms must be >= 0", ToString(kind)));
  }
}

nlohmann::json BackendEndpoint::ToJson() const {
  return {{"url", url},
          {"timeout", timeout_seconds},
          {"max_retries", max_retries},
          {"concurrency", concurrency},
          {"backoff_ms", backoff_ms},
          {"inline_audio", inline_audio}};
}

EndpointSet EndpointSet::AllMock(std::string_view name) {
  EndpointSet set;
  for (BackendKind kind : kAllBackendKinds) {
    BackendEndpoint endpoint;
    endpoint.kind = kind;
    endpoint.url = fmt::format("mock:{}", name);
    set.Set(std::move(endpoint));
  }
  return set;
}

EndpointSet EndpointSet::FromJson(const nlohmann::json& json) {
  if (!json.is_object()) throw ConfigError("endpoints must be a JSON object");
  EndpointSet set;
  for (const auto& [key, value] : json.items()) {
    BackendEndpoint endpoint;
    endpoint.kind = ParseBackendKind(key);
    try {
      if (value.is_string()) {
        endpoint.url = value.get<std::string>();
      } else if (value.is_object()) {
        endpoint.url = value.at("url").get<std::string>();
        endpoint.timeout_seconds = value.value("timeout", 30.0);
        endpoint.max_retries = value.value("max_retries", 2);
        endpoint.concurrency = value.value("concurrency", 4);
        endpoint.backoff_ms = value.value("backoff_ms", 0);
        endpoint.inline_audio = value.value("inline_audio", false);
        if (value.contains("auth_token")) {
          endpoint.auth_token = value.at("auth_token").get<std::string>();
        }
      } else {
        throw ConfigError("expected a url string or an object");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(fmt::format("endpoint '{}': {}", key, e.what()));
    }
    endpoint.Validate();
    set.Set(std::move(endpoint));
  }
  return set;
}

EndpointSet EndpointSet::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot read endpoints file {}", path.string()));
  }
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("endpoints file {}: {}", path.string(), e.what()));
  }
}

void EndpointSet::ApplyEnvironment() {
  for (BackendKind kind : kAllBackendKinds) {
    const auto url = Env(kind, "URL");
    if (!Has(kind) && !url) continue;
    BackendEndpoint endpoint;
    if (Has(kind)) endpoint = Get(kind);
    endpoint.kind = kind;
    if (url) endpoint.url = *url;
    if (const auto v = Env(kind, "TIMEOUT")) {
      endpoint.timeout_seconds = ParseNumber<double>(*v, "timeout");
    }
    if (const auto v = Env(kind, "MAX_RETRIES")) {
      endpoint.max_retries = ParseNumber<int>(*v, "max_retries");
    }
    if (const auto v = Env(kind, "TOKEN")) endpoint.auth_token = *v;
    endpoint.Validate();
    Set(std::move(endpoint));
  }
}

const BackendEndpoint& EndpointSet::Get(BackendKind kind) const {
  const auto it = endpoints_.find(kind);
  if (it == endpoints_.end()) {
    throw ConfigError(fmt::format("no {} endpoint configured", ToString(kind)));
  }
  return it->second;
}

void EndpointSet::Set(BackendEndpoint endpoint) {
  const BackendKind kind = endpoint.kind;
  endpoints_[kind] = std::move(endpoint);
}

nlohmann::json EndpointSet::ToJson() const {
  nlohmann::json json = nlohmann::json::object();
  for (const auto& [kind, endpoint] : endpoints_) {
    json[std::string(ToString(kind))] = endpoint.ToJson();
  }
  return json;
}

}  // namespace speechveil

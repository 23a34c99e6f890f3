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

#ifndef SPEECHVEIL_BACKEND_ENDPOINT_H_
#define SPEECHVEIL_BACKEND_ENDPOINT_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace speechveil {

enum class BackendKind { kAsr, kNer, kLlm, kTts, kEmbed, kMos };

inline constexpr std::array<BackendKind, 6> kAllBackendKinds = {
    BackendKind::kAsr, BackendKind::kNer,   BackendKind::kLlm,
    BackendKind::kTts, BackendKind::kEmbed, BackendKind::kMos};

inline constexpr std::string_view kProtocolVersion = "1";

std::string_view ToString(BackendKind kind);
BackendKind ParseBackendKind(std::string_view name);
// "/v1/asr", "/v1/ner", "/v1/complete", "/v1/tts", "/v1/embed", "/v1/mos".
std::string_view Route(BackendKind kind);
std::optional<BackendKind> KindForRoute(std::string_view route);

struct BackendEndpoint {
  BackendKind kind = BackendKind::kAsr;
  std::string url;  // http(s)://host:port or mock:<name>
  double timeout_seconds = 30.0;
  int max_retries = 2;
  int concurrency = 4;
  int backoff_ms = 0;  // doubled after every failed attempt
  std::optional<std::string> auth_token;
  // Send audio as base64 instead of a shared-filesystem path.
  bool inline_audio = false;

  bool IsMock() const { return url.rfind("mock:", 0) == 0; }
  std::string MockName() const { return IsMock() ? url.substr(5) : ""; }

  // Throws ConfigError for empty urls, negative retries or a zero limit.
  void Validate() const;

  // The auth token is never serialized.
  nlohmann::json ToJson() const;
};

class EndpointSet {
 public:
  EndpointSet() = default;

  // Every kind bound to mock:<name>.
  static EndpointSet AllMock(std::string_view name = "default");

  // {"asr": {"url": ..., "timeout": ..., "max_retries": ...}, ...}; a bare
  // string value is shorthand for the url. Missing kinds stay unset.
  static EndpointSet FromJson(const nlohmann::json& json);
  static EndpointSet Load(const std::filesystem::path& path);

  // SPEECHVEIL_<KIND>_URL, _TIMEOUT, _MAX_RETRIES and _TOKEN.
  void ApplyEnvironment();

  const BackendEndpoint& Get(BackendKind kind) const;
  bool Has(BackendKind kind) const { return endpoints_.contains(kind); }
  void Set(BackendEndpoint endpoint);

  nlohmann::json ToJson() const;

 private:
  std::map<BackendKind, BackendEndpoint> endpoints_;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_ENDPOINT_H_

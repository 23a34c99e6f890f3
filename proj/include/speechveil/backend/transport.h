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

#ifndef SPEECHVEIL_BACKEND_TRANSPORT_H_
#define SPEECHVEIL_BACKEND_TRANSPORT_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace speechveil {

// One request/response exchange. Implementations throw TransportError for
// retryable failures (connection, timeout, 5xx) and ProtocolError for
// non-retryable ones (4xx, malformed body).
class Transport {
 public:
  virtual ~Transport() = default;
  virtual nlohmann::json Post(std::string_view route,
                              const nlohmann::json& body) = 0;
  virtual nlohmann::json Get(std::string_view route) = 0;
};

// Maps an HTTP status and raw body onto the error taxonomy above.
nlohmann::json InterpretResponse(int status, std::string_view body);

// Error body used by every server: {"error": {"code": ..., "message": ...}}.
nlohmann::json ErrorBody(std::string_view code, std::string_view message);

class HttpTransport : public Transport {
 public:
  HttpTransport(std::string base_url, double timeout_seconds,
                std::optional<std::string> auth_token = std::nullopt);
  ~HttpTransport() override;

  nlohmann::json Post(std::string_view route,
                      const nlohmann::json& body) override;
  nlohmann::json Get(std::string_view route) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_TRANSPORT_H_

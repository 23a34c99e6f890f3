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

#include "speechveil/backend/transport.h"

#include <fmt/format.h>

#include "httplib.h"
#include "speechveil/core/errors.h"

namespace speechveil {

nlohmann::json ErrorBody(std::string_view code, std::string_view message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

nlohmann::json InterpretResponse(int status, std::string_view body) {
  nlohmann::json json = nlohmann::json::parse(body, nullptr, false);
  std::string code = "http_" + std::to_string(status);
  std::string message(body.substr(0, 200));
  if (!json.is_discarded() && json.is_object() && json.contains("error") &&
      json["error"].is_object()) {
    code = json["error"].value("code", code);
    message = json["error"].value("message", message);
  }
  if (status >= 500) {
    throw TransportError(fmt::format("server error {} ({}): {}", status, code,
                                     message));
  }
  if (status == 404 || code == "not_found") {
    throw NotFoundError(message);
  }
  if (status >= 400) {
    throw ProtocolError(fmt::format("request rejected ({}): {}", code, message),
                        code);
  }
  if (json.is_discarded() || !json.is_object()) {
    throw ProtocolError("response body is not a JSON object", "bad_response");
  }
  return json;
}

struct HttpTransport::Impl {
  std::string url;
  double timeout;
  std::optional<std::string> token;

  // A client per request keeps concurrent callers independent.
  std::unique_ptr<httplib::Client> NewClient() const {
    auto client = std::make_unique<httplib::Client>(url);
    const auto seconds = static_cast<time_t>(timeout);
    const auto micros = static_cast<time_t>((timeout - seconds) * 1e6);
    client->set_connection_timeout(seconds, micros);
    client->set_read_timeout(seconds, micros);
    client->set_write_timeout(seconds, micros);
    return client;
  }

  httplib::Headers Headers() const {
    httplib::Headers headers;
    if (token) headers.emplace("Authorization", "Bearer " + *token);
    return headers;
  }
};

HttpTransport::HttpTransport(std::string base_url, double timeout_seconds,
                             std::optional<std::string> auth_token)
    : impl_(std::make_unique<Impl>(
          Impl{std::move(base_url), timeout_seconds, std::move(auth_token)})) {}

HttpTransport::~HttpTransport() = default;

nlohmann::json HttpTransport::Post(std::string_view route,
                                   const nlohmann::json& body) {
  const auto result = impl_->NewClient()->Post(
      std::string(route), impl_->Headers(), body.dump(), "application/json");
  if (!result) {
    throw TransportError(fmt::format("POST {} failed: {}", route,
                                     httplib::to_string(result.error())));
  }
  return InterpretResponse(result->status, result->body);
}

nlohmann::json HttpTransport::Get(std::string_view route) {
  const auto result =
      impl_->NewClient()->Get(std::string(route), impl_->Headers());
  if (!result) {
    throw TransportError(fmt::format("GET {} failed: {}", route,
                                     httplib::to_string(result.error())));
  }
  return InterpretResponse(result->status, result->body);
}

}  // namespace speechveil

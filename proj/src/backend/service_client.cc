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

#include "speechveil/backend/service_client.h"

#include <chrono>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

}  // namespace

ServiceClient::ServiceClient(BackendEndpoint endpoint,
                             std::shared_ptr<Transport> transport)
    : endpoint_(std::move(endpoint)),
      transport_(std::move(transport)),
      slots_(std::make_unique<std::counting_semaphore<>>(
          std::max(1, endpoint_.concurrency))) {
  endpoint_.Validate();
}

nlohmann::json ServiceClient::Call(const nlohmann::json& request) {
  const std::string_view kind = ToString(endpoint_.kind);
  const int max_attempts = 1 + endpoint_.max_retries;
  int delay_ms = endpoint_.backoff_ms;
  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ++attempts_;
    try {
      SlotGuard slot(*slots_);
      return transport_->Post(Route(endpoint_.kind), request);
    } catch (const TransportError& e) {
      last_error = e.what();
      spdlog::debug("{} attempt {}/{} failed: {}", kind, attempt, max_attempts,
                    last_error);
    }
    if (attempt < max_attempts && delay_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
  }
  throw BackendError(fmt::format("{} request failed after {} attempts: {}",
                                 kind, max_attempts, last_error),
                     std::string(kind), max_attempts);
}

nlohmann::json ServiceClient::Health() {
  const nlohmann::json health = transport_->Get("/v1/health");
  if (health.value("protocol_version", "") != kProtocolVersion) {
    throw ProtocolError(fmt::format("unsupported protocol version '{}'",
                                    health.value("protocol_version", "")),
                        "protocol_version");
  }
  const std::string kind(ToString(endpoint_.kind));
  bool serves = health.value("kind", "") == kind;
  if (health.contains("kinds") && health["kinds"].is_array()) {
    for (const auto& k : health["kinds"]) serves |= k == kind;
  }
  if (!serves) {
    throw ProtocolError(
        fmt::format("service at {} does not serve {}", endpoint_.url, kind),
        "wrong_kind");
  }
  return health;
}

}  // namespace speechveil

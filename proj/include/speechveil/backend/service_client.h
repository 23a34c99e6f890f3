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

#ifndef SPEECHVEIL_BACKEND_SERVICE_CLIENT_H_
#define SPEECHVEIL_BACKEND_SERVICE_CLIENT_H_

#include <atomic>
#include <memory>
#include <semaphore>

#include "json.hpp"
#include "speechveil/backend/endpoint.h"
#include "speechveil/backend/transport.h"

namespace speechveil {

// Retry and concurrency policy around a Transport. Shareable across threads.
class ServiceClient {
 public:
  ServiceClient(BackendEndpoint endpoint, std::shared_ptr<Transport> transport);

  // POSTs to the kind's route. TransportError is retried exactly
  // endpoint.max_retries times, then surfaces as BackendError carrying the
  // attempt count. ProtocolError propagates on the first occurrence.
  nlohmann::json Call(const nlohmann::json& request);

  // GET /v1/health; checks the protocol version and kind.
  nlohmann::json Health();

  const BackendEndpoint& endpoint() const { return endpoint_; }
  // Transport attempts made so far, for tests and logging.
  long attempts() const { return attempts_.load(); }

 private:
  BackendEndpoint endpoint_;
  std::shared_ptr<Transport> transport_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
  std::atomic<long> attempts_{0};
};

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_SERVICE_CLIENT_H_

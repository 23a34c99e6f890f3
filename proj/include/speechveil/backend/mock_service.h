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

#ifndef SPEECHVEIL_BACKEND_MOCK_SERVICE_H_
#define SPEECHVEIL_BACKEND_MOCK_SERVICE_H_

#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "json.hpp"
#include "speechveil/backend/mock_world.h"
#include "speechveil/backend/transport.h"

namespace speechveil {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

// Wire-protocol front end over a MockWorld. The same dispatch serves
// in-process "mock:<name>" endpoints and `mock-serve` over HTTP.
// Names: "default", "echo" (LLM returns its input), "malformed" (LLM drops
// the delimiters).
class MockService {
 public:
  MockService(std::shared_ptr<const MockWorld> world, std::string name = "default");

  ServiceResponse Handle(std::string_view method, std::string_view route,
                         const nlohmann::json& body) const;

  const std::string& name() const { return name_; }

 private:
  nlohmann::json Dispatch(std::string_view route, const nlohmann::json& body) const;
  MockAudio ResolveAudio(const nlohmann::json& body) const;

  std::shared_ptr<const MockWorld> world_;
  std::string name_;
  MockLlmMode llm_mode_ = MockLlmMode::kCycle;
};

// Calls a MockService directly, with the same status mapping as HTTP.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(std::shared_ptr<const MockService> service)
      : service_(std::move(service)) {}

  nlohmann::json Post(std::string_view route,
                      const nlohmann::json& body) override;
  nlohmann::json Get(std::string_view route) override;

 private:
  std::shared_ptr<const MockService> service_;
};

// Serves a MockService over HTTP on a background thread.
class MockHttpServer {
 public:
  explicit MockHttpServer(std::shared_ptr<const MockService> service);
  ~MockHttpServer();

  // Binds and starts listening; port 0 picks a free port. Returns the port.
  int Start(const std::string& host, int port);
  // Blocks until the listener started by Start() exits.
  void Wait();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_MOCK_SERVICE_H_

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

#include "speechveil/backend/mock_service.h"

#include <fmt/format.h>

#include "httplib.h"
#include "speechveil/backend/audio.h"
#include "speechveil/backend/endpoint.h"
#include "speechveil/core/dataset.h"
#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

const nlohmann::json& Field(const nlohmann::json& body, const char* key) {
  if (!body.is_object() || !body.contains(key)) {
    throw ValidationError(fmt::format("request is missing '{}'", key));
  }
  return body.at(key);
}

std::string StringField(const nlohmann::json& body, const char* key) {
  const nlohmann::json& value = Field(body, key);
  if (!value.is_string()) {
    throw ValidationError(fmt::format("'{}' must be a string", key));
  }
  return value.get<std::string>();
}

}  // namespace

MockService::MockService(std::shared_ptr<const MockWorld> world, std::string name)
    : world_(std::move(world)), name_(std::move(name)) {
  if (name_ == "echo") {
    llm_mode_ = MockLlmMode::kEcho;
  } else if (name_ == "malformed") {
    llm_mode_ = MockLlmMode::kMalformed;
  } else if (name_ != "default") {
    throw ConfigError(fmt::format(
        "unknown mock '{}' (expected default, echo or malformed)", name_));
  }
}

MockAudio MockService::ResolveAudio(const nlohmann::json& body) const {
  const nlohmann::json& audio = Field(body, "audio");
  if (audio.is_object() && audio.contains("path")) {
    return world_->ResolvePath(StringField(audio, "path"));
  }
  if (audio.is_object() && audio.contains("b64")) {
    return world_->ResolveBytes(Base64Decode(StringField(audio, "b64")));
  }
  throw ValidationError("'audio' must carry 'path' or 'b64'");
}

nlohmann::json MockService::Dispatch(std::string_view route,
                                     const nlohmann::json& body) const {
  const auto kind = KindForRoute(route);
  if (!kind) throw NotFoundError(fmt::format("no route {}", route));
  switch (*kind) {
    case BackendKind::kAsr:
      return {{"text", world_->Transcribe(ResolveAudio(body))}};
    case BackendKind::kNer: {
      const std::string text = StringField(body, "text");
      nlohmann::json entities = nlohmann::json::array();
      for (const EntitySpan& span : world_->DetectEntities(text)) {
        entities.push_back({{"label", ToString(span.label)},
                            {"start", span.char_start},
                            {"end", span.char_end},
                            {"surface", span.surface}});
      }
      return {{"entities", entities}};
    }
    case BackendKind::kLlm:
      return {{"completion",
               world_->Complete(StringField(body, "prompt"), llm_mode_)}};
    case BackendKind::kTts: {
      std::optional<SpeakerAttributes> attributes;
      if (body.contains("attributes") && !body["attributes"].is_null()) {
        attributes = SpeakerAttributes::FromJson(body["attributes"]);
      }
      const WavAudio wav = world_->Synthesize(
          StringField(body, "text"), StringField(body, "description"), attributes);
      return {{"audio", {{"b64", Base64Encode(EncodeWav(wav))}, {"format", "wav"}}},
              {"metadata", nlohmann::json::parse(wav.metadata)}};
    }
    case BackendKind::kEmbed:
      return {{"embedding", world_->Embed(ResolveAudio(body))},
              {"model", "mock-embed"}};
    case BackendKind::kMos:
      return {{"mos", world_->PredictMos(ResolveAudio(body))}};
  }
  throw NotFoundError(fmt::format("no route {}", route));
}

ServiceResponse MockService::Handle(std::string_view method,
                                    std::string_view route,
                                    const nlohmann::json& body) const {
  try {
    if (method == "GET" && route == "/v1/health") {
      nlohmann::json kinds = nlohmann::json::array();
      for (BackendKind kind : kAllBackendKinds) kinds.push_back(ToString(kind));
      return {200,
              {{"kind", "mock"},
               {"kinds", kinds},
               {"model", "mock:" + name_},
               {"protocol_version", kProtocolVersion}}};
    }
    if (method != "POST") {
      return {405, ErrorBody("method_not_allowed",
                             fmt::format("{} {} is not supported", method, route))};
    }
    return {200, Dispatch(route, body)};
  } catch (const NotFoundError& e) {
    return {404, ErrorBody("not_found", e.what())};
  } catch (const ValidationError& e) {
    return {400, ErrorBody("invalid_request", e.what())};
  } catch (const nlohmann::json::exception& e) {
    return {400, ErrorBody("invalid_request", e.what())};
  } catch (const std::exception& e) {
    return {500, ErrorBody("internal", e.what())};
  }
}

nlohmann::json InProcessTransport::Post(std::string_view route,
                                        const nlohmann::json& body) {
  const ServiceResponse response = service_->Handle("POST", route, body);
  return InterpretResponse(response.status, response.body.dump());
}

nlohmann::json InProcessTransport::Get(std::string_view route) {
  const ServiceResponse response = service_->Handle("GET", route, nullptr);
  return InterpretResponse(response.status, response.body.dump());
}

struct MockHttpServer::Impl {
  std::shared_ptr<const MockService> service;
  httplib::Server server;
  std::thread thread;

  void Install() {
    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      nlohmann::json body;
      if (req.method == "POST") {
        body = nlohmann::json::parse(req.body, nullptr, false);
        if (body.is_discarded()) {
          res.status = 400;
          res.set_content(ErrorBody("invalid_json", "body is not JSON").dump(),
                          "application/json");
          return;
        }
      }
      const ServiceResponse response = service->Handle(req.method, req.path, body);
      res.status = response.status;
      res.set_content(response.body.dump(), "application/json");
    };
    server.Get(R"(/v1/.*)", handler);
    server.Post(R"(/v1/.*)", handler);
  }
};

MockHttpServer::MockHttpServer(std::shared_ptr<const MockService> service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  impl_->Install();
}

MockHttpServer::~MockHttpServer() { Stop(); }

int MockHttpServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw ConfigError(fmt::format("cannot bind {}:{}", host, port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void MockHttpServer::Wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void MockHttpServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace speechveil

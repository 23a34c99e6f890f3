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

#ifndef SPEECHVEIL_BACKEND_CLIENTS_H_
#define SPEECHVEIL_BACKEND_CLIENTS_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "speechveil/backend/endpoint.h"
#include "speechveil/backend/mock_world.h"
#include "speechveil/backend/service_client.h"
#include "speechveil/core/types.h"
#include "speechveil/speaker/description.h"

namespace speechveil {

struct EmbeddingVector {
  std::vector<double> values;  // unit norm
  std::string model;
};

struct SynthesisResult {
  std::string wav_bytes;
  nlohmann::json metadata;
};

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

// Builds the transport for an endpoint. The default resolves mock:<name>
// against `world` and everything else over HTTP.
using TransportFactory =
    std::function<std::shared_ptr<Transport>(const BackendEndpoint&)>;

// Typed, schema-validating clients for the six services.
class BackendClients {
 public:
  BackendClients(const EndpointSet& endpoints,
                 std::shared_ptr<const MockWorld> world = nullptr,
                 TransportFactory factory = nullptr);

  std::string Transcribe(const std::string& audio_ref);
  // Spans are validated against `text` and overlaps resolved.
  AnnotatedTranscript DetectEntities(const std::string& text);
  std::string Complete(const std::string& prompt);
  // Throws ValidationError for empty text.
  SynthesisResult Synthesize(const std::string& text,
                             const SpeakerDescription& description);
  EmbeddingVector Embed(const std::string& audio_ref);
  double PredictMos(const std::string& audio_ref);

  ServiceClient& client(BackendKind kind);

 private:
  nlohmann::json AudioRequest(BackendKind kind, const std::string& audio_ref);

  std::map<BackendKind, std::unique_ptr<ServiceClient>> clients_;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_CLIENTS_H_

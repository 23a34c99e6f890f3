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

#include "speechveil/backend/clients.h"

#include <cmath>

#include <fmt/format.h>

#include "speechveil/backend/audio.h"
#include "speechveil/backend/mock_service.h"
#include "speechveil/backend/transport.h"
#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"
#include "speechveil/core/utf8.h"

namespace speechveil {
namespace {

ProtocolError BadResponse(BackendKind kind, std::string_view what) {
  return ProtocolError(fmt::format("{} response {}", ToString(kind), what),
                       "bad_response");
}

const nlohmann::json& Require(const nlohmann::json& body, BackendKind kind,
                              const char* key) {
  if (!body.contains(key)) {
    throw BadResponse(kind, fmt::format("lacks '{}'", key));
  }
  return body.at(key);
}

std::string RequireString(const nlohmann::json& body, BackendKind kind,
                          const char* key) {
  const nlohmann::json& value = Require(body, kind, key);
  if (!value.is_string()) {
    throw BadResponse(kind, fmt::format("field '{}' is not a string", key));
  }
  return value.get<std::string>();
}

}  // namespace

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw ValidationError(fmt::format(
        "cannot compare embeddings of dimension {} and {}", a.size(), b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw ValidationError("zero-norm embedding");
  return dot / std::sqrt(na * nb);
}

BackendClients::BackendClients(const EndpointSet& endpoints,
                               std::shared_ptr<const MockWorld> world,
                               TransportFactory factory) {
  std::map<std::string, std::shared_ptr<const MockService>> mocks;
  for (BackendKind kind : kAllBackendKinds) {
    if (!endpoints.Has(kind)) continue;
    const BackendEndpoint& endpoint = endpoints.Get(kind);
    std::shared_ptr<Transport> transport;
    if (factory) {
      transport = factory(endpoint);
    } else if (endpoint.IsMock()) {
      if (!world) {
        throw ConfigError(fmt::format(
            "{} endpoint {} needs a mock world", ToString(kind), endpoint.url));
      }
      auto& service = mocks[endpoint.MockName()];
      if (!service) service = std::make_shared<MockService>(world, endpoint.MockName());
      transport = std::make_shared<InProcessTransport>(service);
    } else {
      transport = std::make_shared<HttpTransport>(
          endpoint.url, endpoint.timeout_seconds, endpoint.auth_token);
    }
    clients_[kind] = std::make_unique<ServiceClient>(endpoint, std::move(transport));
  }
}

ServiceClient& BackendClients::client(BackendKind kind) {
  const auto it = clients_.find(kind);
  if (it == clients_.end()) {
    throw ConfigError(fmt::format("no {} endpoint configured", ToString(kind)));
  }
  return *it->second;
}

nlohmann::json BackendClients::AudioRequest(BackendKind kind,
                                            const std::string& audio_ref) {
  if (audio_ref.empty()) throw ValidationError("empty audio reference");
  if (client(kind).endpoint().inline_audio) {
    return {{"audio", {{"b64", Base64Encode(ReadBinaryFile(audio_ref))}}}};
  }
  return {{"audio", {{"path", audio_ref}}}};
}

std::string BackendClients::Transcribe(const std::string& audio_ref) {
  const auto body = client(BackendKind::kAsr).Call(AudioRequest(BackendKind::kAsr, audio_ref));
  std::string text = RequireString(body, BackendKind::kAsr, "text");
  if (!utf8::IsValid(text)) throw BadResponse(BackendKind::kAsr, "is not UTF-8");
  return text;
}

AnnotatedTranscript BackendClients::DetectEntities(const std::string& text) {
  const auto body = client(BackendKind::kNer).Call({{"text", text}});
  const nlohmann::json& entities = Require(body, BackendKind::kNer, "entities");
  if (!entities.is_array()) throw BadResponse(BackendKind::kNer, "entities is not a list");
  const std::size_t length = utf8::Length(text);
  std::vector<EntitySpan> spans;
  for (const nlohmann::json& e : entities) {
    try {
      const auto label = TryParseEntityLabel(e.at("label").get<std::string>());
      if (!label) {
        throw BadResponse(BackendKind::kNer,
                          fmt::format("has unknown label {}", e.at("label").dump()));
      }
      const auto start = e.at("start").get<long long>();
      const auto end = e.at("end").get<long long>();
      if (start < 0 || end <= start || static_cast<std::size_t>(end) > length) {
        throw BadResponse(BackendKind::kNer,
                          fmt::format("span [{}, {}) lies outside text of length {}",
                                      start, end, length));
      }
      EntitySpan span = MakeSpan(text, *label, static_cast<std::size_t>(start),
                                 static_cast<std::size_t>(end));
      if (e.contains("surface") && e["surface"].get<std::string>() != span.surface) {
        throw BadResponse(BackendKind::kNer,
                          fmt::format("surface '{}' does not match text slice '{}'",
                                      e["surface"].get<std::string>(), span.surface));
      }
      spans.push_back(std::move(span));
    } catch (const nlohmann::json::exception& ex) {
      throw BadResponse(BackendKind::kNer, fmt::format("has a malformed entity: {}", ex.what()));
    }
  }
  return AnnotatedTranscript::WithResolvedSpans(text, std::move(spans));
}

std::string BackendClients::Complete(const std::string& prompt) {
  const auto body = client(BackendKind::kLlm).Call({{"prompt", prompt}});
  return RequireString(body, BackendKind::kLlm, "completion");
}

SynthesisResult BackendClients::Synthesize(const std::string& text,
                                           const SpeakerDescription& description) {
  if (TrimAscii(text).empty()) throw ValidationError("cannot synthesize empty text");
  const auto body = client(BackendKind::kTts).Call(
      {{"text", text},
       {"description", description.rendered},
       {"attributes", description.attributes.ToJson()}});
  const nlohmann::json& audio = Require(body, BackendKind::kTts, "audio");
  SynthesisResult result;
  if (audio.is_object() && audio.contains("b64")) {
    try {
      result.wav_bytes = Base64Decode(audio["b64"].get<std::string>());
    } catch (const ValidationError& e) {
      throw BadResponse(BackendKind::kTts, e.what());
    }
  } else if (audio.is_object() && audio.contains("path")) {
    result.wav_bytes = ReadBinaryFile(audio["path"].get<std::string>());
  } else {
    throw BadResponse(BackendKind::kTts, "audio has neither 'b64' nor 'path'");
  }
  try {
    DecodeWav(result.wav_bytes);
  } catch (const ValidationError& e) {
    throw BadResponse(BackendKind::kTts, fmt::format("audio is invalid: {}", e.what()));
  }
  result.metadata = body.value("metadata", nlohmann::json::object());
  return result;
}

EmbeddingVector BackendClients::Embed(const std::string& audio_ref) {
  const auto body =
      client(BackendKind::kEmbed).Call(AudioRequest(BackendKind::kEmbed, audio_ref));
  const nlohmann::json& values = Require(body, BackendKind::kEmbed, "embedding");
  if (!values.is_array() || values.empty()) {
    throw BadResponse(BackendKind::kEmbed, "embedding is not a non-empty list");
  }
  EmbeddingVector out;
  double norm = 0;
  for (const nlohmann::json& v : values) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      throw BadResponse(BackendKind::kEmbed, "embedding has a non-finite value");
    }
    out.values.push_back(v.get<double>());
    norm += out.values.back() * out.values.back();
  }
  if (norm == 0) throw BadResponse(BackendKind::kEmbed, "embedding has zero norm");
  norm = std::sqrt(norm);
  for (double& x : out.values) x /= norm;
  out.model = body.value("model", "");
  return out;
}

double BackendClients::PredictMos(const std::string& audio_ref) {
  const auto body = client(BackendKind::kMos).Call(AudioRequest(BackendKind::kMos, audio_ref));
  const nlohmann::json& mos = Require(body, BackendKind::kMos, "mos");
  if (!mos.is_number() || !(mos.get<double>() >= 1.0 && mos.get<double>() <= 5.0)) {
    throw BadResponse(BackendKind::kMos, fmt::format("mos {} outside [1, 5]", mos.dump()));
  }
  return mos.get<double>();
}

}  // namespace speechveil

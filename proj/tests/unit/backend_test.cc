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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "speechveil/backend/audio.h"
#include "speechveil/backend/clients.h"
#include "speechveil/backend/endpoint.h"
#include "speechveil/backend/mock_service.h"
#include "speechveil/backend/mock_world.h"
#include "speechveil/backend/service_client.h"
#include "speechveil/backend/synthetic_corpus.h"
#include "speechveil/content/prompt.h"
#include "speechveil/content/replacement.h"
#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"
#include "speechveil/core/text.h"
#include "speechveil/speaker/description.h"

namespace speechveil {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("speechveil_backend_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

DatasetManifest SmallManifest() {
  std::vector<Utterance> utts;
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"A", "i love paris"}, {"A", "anna went home"}, {"B", "nothing to see"},
      {"B", "the lisbon treaty matters"}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Utterance u;
    u.id = fmt::format("u{}", i);
    u.speaker_id = rows[i].first;
    u.audio_ref = fmt::format("mock/{}.wav", u.id);
    u.reference_transcript = rows[i].second;
    utts.push_back(u);
  }
  return DatasetManifest(utts, "small");
}

struct Fixture {
  std::shared_ptr<MockWorld> world;
  BackendClients clients;

  explicit Fixture(MockWorldConfig config = MockWorldConfig::Default(),
                   const DatasetManifest& manifest = SmallManifest(),
                   std::string_view mock = "default")
      : world(std::make_shared<MockWorld>(std::move(config), manifest)),
        clients(EndpointSet::AllMock(mock), world) {}
};

SpeakerDescription Desc(std::string_view rate, std::string_view channel = "clean",
                        std::string_view pitch = "normal") {
  SpeakerAttributes a;
  a.Set(Attribute::kGender, "female");
  a.Set(Attribute::kPitch, pitch);
  a.Set(Attribute::kPitchModulation, "monotone");
  a.Set(Attribute::kChannel, channel);
  a.Set(Attribute::kSpeakingRate, rate);
  return Describe(a, "test");
}

// --- endpoints --------------------------------------------------------------

TEST(EndpointTest, ParsesJsonAndShorthand) {
  const EndpointSet set = EndpointSet::FromJson(nlohmann::json::parse(R"({
    "asr": "http://localhost:9000",
    "llm": {"url": "mock:echo", "timeout": 5, "max_retries": 1, "concurrency": 2}
  })"));
  EXPECT_EQ(set.Get(BackendKind::kAsr).url, "http://localhost:9000");
  EXPECT_EQ(set.Get(BackendKind::kAsr).max_retries, 2);
  EXPECT_EQ(set.Get(BackendKind::kLlm).MockName(), "echo");
  EXPECT_EQ(set.Get(BackendKind::kLlm).concurrency, 2);
  EXPECT_FALSE(set.Has(BackendKind::kTts));
  EXPECT_THROW(set.Get(BackendKind::kTts), ConfigError);
}

TEST(EndpointTest, RejectsBadConfig) {
  EXPECT_THROW(EndpointSet::FromJson(nlohmann::json::parse(R"({"asr": "ftp://x"})")),
               ConfigError);
  EXPECT_THROW(EndpointSet::FromJson(nlohmann::json::parse(
                   R"({"asr": {"url": "mock:default", "max_retries": -1}})")),
               ConfigError);
  EXPECT_THROW(EndpointSet::FromJson(nlohmann::json::parse(R"({"gpu": "mock:x"})")),
               ConfigError);
  EXPECT_THROW(EndpointSet::Load("/nonexistent/endpoints.json"), ConfigError);
}

TEST(EndpointTest, EnvironmentOverrides) {
  EndpointSet set = EndpointSet::AllMock();
  setenv("SPEECHVEIL_ASR_URL", "http://127.0.0.1:1", 1);
  setenv("SPEECHVEIL_ASR_MAX_RETRIES", "5", 1);
  setenv("SPEECHVEIL_ASR_TOKEN", "secret", 1);
  set.ApplyEnvironment();
  unsetenv("SPEECHVEIL_ASR_URL");
  unsetenv("SPEECHVEIL_ASR_MAX_RETRIES");
  unsetenv("SPEECHVEIL_ASR_TOKEN");
  EXPECT_EQ(set.Get(BackendKind::kAsr).url, "http://127.0.0.1:1");
  EXPECT_EQ(set.Get(BackendKind::kAsr).max_retries, 5);
  EXPECT_EQ(set.Get(BackendKind::kAsr).auth_token, "secret");
  EXPECT_EQ(set.ToJson().dump().find("secret"), std::string::npos);
  EXPECT_EQ(set.Get(BackendKind::kNer).url, "mock:default");
}

TEST(EndpointTest, RoutesAreDistinct) {
  for (BackendKind kind : kAllBackendKinds) {
    EXPECT_EQ(KindForRoute(Route(kind)), kind);
    EXPECT_EQ(ParseBackendKind(ToString(kind)), kind);
  }
  EXPECT_EQ(Route(BackendKind::kLlm), "/v1/complete");
}

// --- audio ------------------------------------------------------------------

TEST(AudioTest, Base64RoundTrip) {
  std::string bytes;
  for (int n = 0; n < 40; ++n) {
    EXPECT_EQ(Base64Decode(Base64Encode(bytes)), bytes) << n;
    bytes.push_back(static_cast<char>(n * 37));
  }
  EXPECT_EQ(Base64Encode("hello"), "aGVsbG8=");
  EXPECT_THROW(Base64Decode("abc"), ValidationError);
  EXPECT_THROW(Base64Decode("a$c="), ValidationError);
}

TEST(AudioTest, WavRoundTripWithMetadata) {
  WavAudio wav;
  wav.sample_rate = 16000;
  wav.samples = {0, 1, -1, 32767, -32768, 12};
  wav.metadata = R"({"a":1})";
  const std::string bytes = EncodeWav(wav);
  EXPECT_EQ(bytes.substr(0, 4), "RIFF");
  const WavAudio back = DecodeWav(bytes);
  EXPECT_EQ(back.samples, wav.samples);
  EXPECT_EQ(back.sample_rate, 16000);
  EXPECT_EQ(back.metadata, wav.metadata);
  EXPECT_THROW(DecodeWav("RIFFxxxxWAVE"), ValidationError);
  EXPECT_THROW(DecodeWav("garbage"), ValidationError);
}

// --- retry and concurrency ---------------------------------------------------

class FlakyTransport : public Transport {
 public:
  FlakyTransport(int failures, bool protocol_failure = false)
      : failures_(failures), protocol_failure_(protocol_failure) {}

  nlohmann::json Post(std::string_view, const nlohmann::json&) override {
    ++calls;
    if (calls <= failures_) {
      if (protocol_failure_) throw ProtocolError("bad request", "invalid_request");
      throw TransportError("connection reset");
    }
    return reply;
  }
  nlohmann::json Get(std::string_view) override { return {}; }

  std::atomic<int> calls{0};
  nlohmann::json reply = {{"text", "ok"}};

 private:
  int failures_;
  bool protocol_failure_;
};

BackendEndpoint AsrEndpoint(int retries) {
  BackendEndpoint e;
  e.kind = BackendKind::kAsr;
  e.url = "http://unused";
  e.max_retries = retries;
  return e;
}

TEST(ServiceClientTest, RetriesExactlyMaxRetriesOnTransportErrors) {
  for (int retries = 0; retries <= 4; ++retries) {
    // Succeeds on the last permitted attempt.
    auto ok = std::make_shared<FlakyTransport>(retries);
    ServiceClient a(AsrEndpoint(retries), ok);
    EXPECT_EQ(a.Call({})["text"], "ok");
    EXPECT_EQ(ok->calls, retries + 1);

    // One failure too many.
    auto bad = std::make_shared<FlakyTransport>(retries + 1);
    ServiceClient b(AsrEndpoint(retries), bad);
    try {
      b.Call({});
      FAIL() << "expected BackendError";
    } catch (const BackendError& e) {
      EXPECT_EQ(e.attempts(), retries + 1);
      EXPECT_EQ(e.kind(), "asr");
    }
    EXPECT_EQ(bad->calls, retries + 1);
  }
}

TEST(ServiceClientTest, NoRetryOnProtocolErrors) {
  auto transport = std::make_shared<FlakyTransport>(1, /*protocol_failure=*/true);
  ServiceClient client(AsrEndpoint(3), transport);
  EXPECT_THROW(client.Call({}), ProtocolError);
  EXPECT_EQ(transport->calls, 1);
}

TEST(ServiceClientTest, NoRetryOnResponseValidationErrors) {
  auto transport = std::make_shared<FlakyTransport>(0);
  transport->reply = {{"transcript", "wrong field"}};
  EndpointSet set;
  set.Set(AsrEndpoint(3));
  BackendClients clients(set, nullptr,
                         [&](const BackendEndpoint&) { return transport; });
  EXPECT_THROW(clients.Transcribe("x.wav"), ProtocolError);
  EXPECT_EQ(transport->calls, 1);
}

class SlowTransport : public Transport {
 public:
  nlohmann::json Post(std::string_view, const nlohmann::json&) override {
    const int now = ++in_flight;
    int seen = max_in_flight.load();
    while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --in_flight;
    return {{"text", "ok"}};
  }
  nlohmann::json Get(std::string_view) override { return {}; }

  std::atomic<int> in_flight{0};
  std::atomic<int> max_in_flight{0};
};

TEST(ServiceClientTest, ConcurrencyLimitIsRespected) {
  auto transport = std::make_shared<SlowTransport>();
  BackendEndpoint endpoint = AsrEndpoint(0);
  endpoint.concurrency = 3;
  ServiceClient client(endpoint, transport);
  std::vector<std::jthread> threads;
  for (int i = 0; i < 12; ++i) threads.emplace_back([&] { client.Call({}); });
  threads.clear();
  EXPECT_LE(transport->max_in_flight.load(), 3);
  EXPECT_GE(transport->max_in_flight.load(), 2);
}

TEST(ServiceClientTest, UnreachableHttpIsBackendError) {
  BackendEndpoint endpoint = AsrEndpoint(1);
  endpoint.url = "http://127.0.0.1:9";
  endpoint.timeout_seconds = 0.5;
  ServiceClient client(endpoint,
                       std::make_shared<HttpTransport>(endpoint.url, 0.5));
  try {
    client.Call({{"audio", {{"path", "x"}}}});
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_EQ(e.attempts(), 2);
  }
}

// --- NER validation -------------------------------------------------------------

TEST(ClientValidationTest, NerSpanOutsideTextIsProtocolError) {
  auto transport = std::make_shared<FlakyTransport>(0);
  EndpointSet set;
  BackendEndpoint ner = AsrEndpoint(0);
  ner.kind = BackendKind::kNer;
  set.Set(ner);
  BackendClients clients(set, nullptr,
                         [&](const BackendEndpoint&) { return transport; });
  transport->reply = nlohmann::json::parse(
      R"({"entities": [{"label": "PLACE", "start": 7, "end": 40}]})");
  EXPECT_THROW(clients.DetectEntities("i love paris"), ProtocolError);
  transport->reply = nlohmann::json::parse(
      R"({"entities": [{"label": "CITY", "start": 7, "end": 12}]})");
  EXPECT_THROW(clients.DetectEntities("i love paris"), ProtocolError);
  transport->reply = nlohmann::json::parse(
      R"({"entities": [{"label": "PLACE", "start": 7, "end": 12, "surface": "rome"}]})");
  EXPECT_THROW(clients.DetectEntities("i love paris"), ProtocolError);
  // Overlaps are resolved, not rejected.
  transport->reply = nlohmann::json::parse(R"({"entities": [
      {"label": "PLACE", "start": 4, "end": 10},
      {"label": "LAW", "start": 0, "end": 17}]})");
  const AnnotatedTranscript t = clients.DetectEntities("the lisbon treaty");
  ASSERT_EQ(t.spans().size(), 1u);
  EXPECT_EQ(t.spans()[0].label, EntityLabel::kLaw);
}

// --- mock services -----------------------------------------------------------

TEST(MockAsrTest, IdentityAtZeroCorruption) {
  Fixture f;
  EXPECT_EQ(f.clients.Transcribe("mock/u0.wav"), "i love paris");
  EXPECT_THROW(f.clients.Transcribe("mock/unknown.wav"), NotFoundError);
}

TEST(MockAsrTest, WordErrorRateTracksCharacterRate) {
  MockWorldConfig config = MockWorldConfig::Default();
  config.asr_char_error_rate = 0.03;
  const DatasetManifest corpus =
      GenerateSyntheticCorpus({40, 25, 3}, MockWorldConfig::Default());
  Fixture f(config, corpus);
  double expected = 0;
  std::size_t words = 0, errors = 0;
  for (const Utterance& u : corpus.utterances()) {
    const auto ref = SplitWhitespace(*u.reference_transcript);
    const auto hyp = SplitWhitespace(f.clients.Transcribe(u.audio_ref));
    ASSERT_EQ(ref.size(), hyp.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      std::size_t corruptible = 0;
      for (char c : ref[i]) corruptible += (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
      expected += 1 - std::pow(1 - config.asr_char_error_rate, corruptible);
      errors += ref[i] != hyp[i];
      ++words;
    }
  }
  const double implied = expected / words;
  const double measured = static_cast<double>(errors) / words;
  EXPECT_NEAR(measured, implied, 0.2 * implied) << measured << " vs " << implied;
}

TEST(MockNerTest, GazetteerLookup) {
  Fixture f;
  const AnnotatedTranscript t = f.clients.DetectEntities("i love paris");
  ASSERT_EQ(t.spans().size(), 1u);
  EXPECT_EQ(t.spans()[0].label, EntityLabel::kPlace);
  EXPECT_EQ(t.spans()[0].char_start, 7u);
  EXPECT_EQ(t.spans()[0].char_end, 12u);
  EXPECT_TRUE(f.clients.DetectEntities("nothing to see here").spans().empty());
  // Word boundaries and case.
  EXPECT_TRUE(f.clients.DetectEntities("parisian romeo").spans().empty());
  EXPECT_EQ(f.clients.DetectEntities("Paris is big").spans()[0].surface, "Paris");
  const AnnotatedTranscript law = f.clients.DetectEntities("under the lisbon treaty");
  ASSERT_EQ(law.spans().size(), 1u);
  EXPECT_EQ(law.spans()[0].label, EntityLabel::kLaw);
}

TEST(MockLlmTest, CyclicSubstitutionFixture) {
  MockWorldConfig config = MockWorldConfig::Default();
  config.replacement_cycles[EntityLabel::kPerson] = {"brian"};
  Fixture f(config);
  const std::string text = "i met anna";
  const AnnotatedTranscript t(text, {MakeSpan(text, EntityLabel::kPerson, 6, 10)});
  const std::string prompt =
      BuildLlmPrompt(t, BuildEntityReport(t), ReplacementPolicy::Default());
  EXPECT_EQ(f.clients.Complete(prompt), "####i met brian####");
}

TEST(MockLlmTest, NoEntitiesEchoesSentence) {
  Fixture f;
  const AnnotatedTranscript t("see you later", {});
  EXPECT_EQ(f.clients.Complete(BuildLlmPrompt(t, BuildEntityReport(t),
                                              ReplacementPolicy::Default())),
            "####see you later####");
}

TEST(MockLlmTest, MalformedModeTriggersParseError) {
  Fixture f(MockWorldConfig::Default(), SmallManifest(), "malformed");
  const std::string text = "i met anna";
  const AnnotatedTranscript t(text, {MakeSpan(text, EntityLabel::kPerson, 6, 10)});
  const ReplacementPolicy policy = ReplacementPolicy::Default();
  const std::string reply =
      f.clients.Complete(BuildLlmPrompt(t, BuildEntityReport(t), policy));
  EXPECT_EQ(reply.find("####"), std::string::npos);
  EXPECT_THROW(ParseLlmReply(reply, policy, t), ParseError);
}

TEST(MockLlmTest, FixedMappingAndCustomDelimiter) {
  Fixture f;
  const std::string text = "anna met john in paris";
  const AnnotatedTranscript t(text, {MakeSpan(text, EntityLabel::kPerson, 0, 4),
                                     MakeSpan(text, EntityLabel::kPerson, 9, 13),
                                     MakeSpan(text, EntityLabel::kPlace, 17, 22)});
  ReplacementPolicy policy = ReplacementPolicy::Default();
  policy.mode = ReplacementMode::kFixedMapping;
  policy.mapping = {{"PERSON", "alex"}, {"john", "sam"}};
  policy.delimiter = "@@";
  const std::string reply = f.clients.Complete(BuildLlmPrompt(t, BuildEntityReport(t), policy));
  const ReplacementPlan plan = ParseLlmReply(reply, policy, t);
  EXPECT_EQ(plan.entries[0].replacement, "alex");
  EXPECT_EQ(plan.entries[1].replacement, "sam");
  EXPECT_EQ(plan.entries[2].replacement, f.world->CycleReplacement(EntityLabel::kPlace, "paris"));
}

TEST(MockLlmTest, CyclicRepliesAlwaysReplaceEverySpan) {
  Fixture f;
  const DatasetManifest corpus = GenerateSyntheticCorpus({6, 20, 9}, MockWorldConfig::Default());
  const ReplacementPolicy policy = ReplacementPolicy::Default();
  std::size_t spans = 0;
  for (const Utterance& u : corpus.utterances()) {
    const AnnotatedTranscript t(*u.reference_transcript, *u.gold_spans);
    const ReplacementPlan plan = ParseLlmReply(
        f.clients.Complete(BuildLlmPrompt(t, BuildEntityReport(t), policy)), policy, t);
    const VerificationResult v = VerifyReplacements(t, ApplyReplacements(t, plan));
    EXPECT_DOUBLE_EQ(v.accuracy, 1.0) << t.text();
    spans += v.total;
  }
  EXPECT_GT(spans, 100u);
}

TEST(MockTtsTest, DeterministicAndRateScaled) {
  Fixture f;
  const std::string text = "the quick brown fox jumps over the lazy dog";
  const SynthesisResult a = f.clients.Synthesize(text, Desc("very quickly"));
  const SynthesisResult b = f.clients.Synthesize(text, Desc("very quickly"));
  const SynthesisResult slow = f.clients.Synthesize(text, Desc("very slowly"));
  EXPECT_EQ(a.wav_bytes, b.wav_bytes);
  EXPECT_LT(DecodeWav(a.wav_bytes).DurationSeconds(),
            DecodeWav(slow.wav_bytes).DurationSeconds());
  EXPECT_NE(a.metadata["identity_hash"], slow.metadata["identity_hash"]);
  EXPECT_EQ(DecodeWav(a.wav_bytes).sample_rate, 16000);
  EXPECT_THROW(f.clients.Synthesize("  ", Desc("slowly")), ValidationError);
}

TEST(MockTtsTest, FundamentalFollowsPitch) {
  Fixture f;
  const auto zero_crossings = [](const WavAudio& wav) {
    int n = 0;
    for (std::size_t i = 1; i < wav.samples.size(); ++i) {
      n += (wav.samples[i - 1] < 0) != (wav.samples[i] < 0);
    }
    return n;
  };
  const WavAudio low = DecodeWav(
      f.clients.Synthesize("some words here", Desc("normally", "clean", "very low-pitched")).wav_bytes);
  const WavAudio high = DecodeWav(
      f.clients.Synthesize("some words here", Desc("normally", "clean", "very high-pitched")).wav_bytes);
  EXPECT_GT(zero_crossings(high), 2 * zero_crossings(low));
}

std::string WriteSynth(Fixture& f, const fs::path& dir, const std::string& name,
                       const std::string& text, const SpeakerDescription& d) {
  const fs::path path = dir / name;
  WriteBinaryFile(path, f.clients.Synthesize(text, d).wav_bytes);
  return path.string();
}

TEST(MockEmbedTest, SameSpeakerOriginalsAreIdentical) {
  Fixture f;
  EXPECT_NEAR(Cosine(f.clients.Embed("mock/u0.wav").values,
                     f.clients.Embed("mock/u1.wav").values),
              1.0, 1e-12);
  EXPECT_LT(std::abs(Cosine(f.clients.Embed("mock/u0.wav").values,
                            f.clients.Embed("mock/u2.wav").values)),
            0.5);
  EXPECT_EQ(f.clients.Embed("mock/u0.wav").values.size(), 192u);
}

TEST(MockEmbedTest, SynthesizedAudioIsDisjointFromEverySpeaker) {
  const DatasetManifest corpus = GenerateSyntheticCorpus({50, 1, 4}, MockWorldConfig::Default());
  Fixture f(MockWorldConfig::Default(), corpus);
  const fs::path dir = TempDir("disjoint");
  double worst = -1;
  for (int i = 0; i < 40; ++i) {
    const SpeakerDescription d = SampleRandomDescription(static_cast<std::uint64_t>(i));
    const auto synth =
        f.clients.Embed(WriteSynth(f, dir, fmt::format("s{}.wav", i), "hello there", d));
    for (const Utterance& u : corpus.utterances()) {
      worst = std::max(worst, Cosine(synth.values, f.clients.Embed(u.audio_ref).values));
    }
  }
  EXPECT_LT(worst, 0.4 + 1e-12);
  EXPECT_LT(worst, 0.5);
}

TEST(MockEmbedTest, NoiseLowersSameSpeakerCosineMonotonically) {
  const DatasetManifest corpus = GenerateSyntheticCorpus({10, 10, 5}, MockWorldConfig::Default());
  double previous = 1.0 + 1e-9;
  for (double sigma : {0.0, 0.2, 0.5, 1.0, 2.0}) {
    MockWorldConfig config = MockWorldConfig::Default();
    config.embedding_noise = sigma;
    Fixture f(config, corpus);
    double sum = 0;
    int n = 0;
    const auto& utts = corpus.utterances();
    for (std::size_t i = 0; i + 1 < utts.size(); ++i) {
      if (utts[i].speaker_id != utts[i + 1].speaker_id) continue;
      sum += Cosine(f.clients.Embed(utts[i].audio_ref).values,
                    f.clients.Embed(utts[i + 1].audio_ref).values);
      ++n;
    }
    const double mean = sum / n;
    EXPECT_LT(mean, previous) << sigma;
    previous = mean;
  }
  EXPECT_LT(previous, 0.5);
}

TEST(MockMosTest, ChannelOrdering) {
  Fixture f;
  const fs::path dir = TempDir("mos");
  const double clean = f.clients.PredictMos(WriteSynth(f, dir, "c.wav", "hello", Desc("slowly", "clean")));
  const double noisy = f.clients.PredictMos(WriteSynth(f, dir, "n.wav", "hello", Desc("slowly", "noisy")));
  EXPECT_DOUBLE_EQ(clean, 4.4);
  EXPECT_LT(noisy, clean);
  EXPECT_DOUBLE_EQ(f.clients.PredictMos("mock/u0.wav"), 4.5);
}

TEST(MockServiceTest, ErrorsUseTheErrorEnvelope) {
  auto world = std::make_shared<MockWorld>(MockWorldConfig::Default(), SmallManifest());
  const MockService service(world);
  const ServiceResponse missing = service.Handle("POST", "/v1/ner", nlohmann::json::object());
  EXPECT_EQ(missing.status, 400);
  EXPECT_EQ(missing.body["error"]["code"], "invalid_request");
  EXPECT_EQ(service.Handle("POST", "/v1/nope", {}).status, 404);
  EXPECT_EQ(service.Handle("GET", "/v1/health", nullptr).body["protocol_version"], "1");
  EXPECT_THROW(MockService(world, "chatty"), ConfigError);
}

TEST(MockServiceTest, HttpMatchesInProcess) {
  auto world = std::make_shared<MockWorld>(MockWorldConfig::Default(), SmallManifest());
  MockHttpServer server(std::make_shared<MockService>(world));
  const int port = server.Start("127.0.0.1", 0);
  EndpointSet http;
  for (BackendKind kind : kAllBackendKinds) {
    BackendEndpoint e;
    e.kind = kind;
    e.url = fmt::format("http://127.0.0.1:{}", port);
    e.inline_audio = kind == BackendKind::kMos;
    http.Set(e);
  }
  BackendClients remote(http);
  BackendClients local(EndpointSet::AllMock(), world);
  EXPECT_NO_THROW(remote.client(BackendKind::kAsr).Health());
  EXPECT_EQ(remote.Transcribe("mock/u1.wav"), local.Transcribe("mock/u1.wav"));
  EXPECT_EQ(remote.DetectEntities("anna went to paris"),
            local.DetectEntities("anna went to paris"));
  EXPECT_EQ(remote.Embed("mock/u3.wav").values, local.Embed("mock/u3.wav").values);
  const SynthesisResult a = remote.Synthesize("hello", Desc("quickly"));
  EXPECT_EQ(a.wav_bytes, local.Synthesize("hello", Desc("quickly")).wav_bytes);
  const fs::path path = TempDir("http") / "a.wav";
  WriteBinaryFile(path, a.wav_bytes);
  EXPECT_DOUBLE_EQ(remote.PredictMos(path.string()), 4.4);  // inline base64
  EXPECT_THROW(remote.Transcribe("mock/none.wav"), NotFoundError);
  server.Stop();
}

// --- synthetic corpus -----------------------------------------------------------

TEST(SyntheticCorpusTest, GoldSpansMatchMockNer) {
  const DatasetManifest corpus = GenerateSyntheticCorpus({8, 30, 1}, MockWorldConfig::Default());
  EXPECT_EQ(corpus.size(), 240u);
  EXPECT_EQ(corpus.SpeakerCount(), 8u);
  Fixture f(MockWorldConfig::Default(), corpus);
  std::set<std::string> keys;
  for (const Utterance& u : corpus.utterances()) {
    keys.insert(NormalizeKey(*u.reference_transcript));
    const AnnotatedTranscript gold(*u.reference_transcript, *u.gold_spans);
    EXPECT_EQ(f.clients.DetectEntities(*u.reference_transcript), gold);
  }
  EXPECT_EQ(keys.size(), corpus.size());
  EXPECT_EQ(GenerateSyntheticCorpus({8, 30, 1}, MockWorldConfig::Default()), corpus);
}

}  // namespace
}  // namespace speechveil

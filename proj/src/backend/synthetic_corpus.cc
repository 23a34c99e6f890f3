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

#include "speechveil/backend/synthetic_corpus.h"

#include <unordered_set>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"
#include "speechveil/core/text.h"
#include "speechveil/core/utf8.h"

namespace speechveil {
namespace {

const std::vector<std::string> kTemplates = {
    "i met {PERSON} in {PLACE} on {WHEN}",
    "{PERSON} said the {NORP} delegation wants {QUANT} more",
    "the report from {ORG} mentions {LAW} twice",
    "we travelled to {PLACE} with {PERSON} {WHEN}",
    "{ORG} will spend {QUANT} on schools in {PLACE}",
    "the {NORP} minister criticised {LAW}",
    "please call {PERSON} about the budget",
    "this proposal has broad support across the house",
    "my colleague {PERSON} from {PLACE} raised this point",
    "the vote on {LAW} is planned for {WHEN}",
    "farmers in {PLACE} lost {QUANT} last season",
    "i thank {PERSON} and the staff of {ORG}",
};
const std::vector<std::string> kOpeners = {"", "so ", "well ", "indeed ",
                                           "honestly ", "colleagues "};
const std::vector<std::string> kTails = {
    "",           " today",        " again",         " as agreed",
    " once more", " in committee", " after the debate", " for the record"};

}  // namespace

DatasetManifest GenerateSyntheticCorpus(const SyntheticCorpusOptions& options,
                                        const MockWorldConfig& world) {
  for (EntityLabel label : kAllEntityLabels) {
    const auto it = world.gazetteer.find(label);
    if (it == world.gazetteer.end() || it->second.empty()) {
      throw ConfigError(fmt::format(
          "synthetic corpus needs gazetteer entries for {}", ToString(label)));
    }
  }
  SplitMix64 rng(DeriveSeed(options.seed, "synthetic-corpus"));
  std::unordered_set<std::string> seen;
  std::vector<Utterance> utterances;
  for (std::size_t s = 0; s < options.speakers; ++s) {
    const std::string speaker = fmt::format("spk{:03d}", s);
    for (std::size_t k = 0; k < options.utterances_per_speaker; ++k) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 1000) {
          throw ConfigError("synthetic corpus ran out of distinct sentences");
        }
        const std::string& pattern = kTemplates[rng.Below(kTemplates.size())];
        std::string text = kOpeners[rng.Below(kOpeners.size())];
        std::vector<EntitySpan> spans;
        std::size_t pos = 0;
        while (pos < pattern.size()) {
          const std::size_t open = pattern.find('{', pos);
          if (open == std::string::npos) {
            text += pattern.substr(pos);
            break;
          }
          const std::size_t close = pattern.find('}', open);
          text += pattern.substr(pos, open - pos);
          const EntityLabel label =
              ParseEntityLabel(pattern.substr(open + 1, close - open - 1));
          const auto& words = world.gazetteer.at(label);
          const std::string& word = words[rng.Below(words.size())];
          const std::size_t start = utf8::Length(text);
          text += word;
          EntitySpan span;
          span.label = label;
          span.char_start = start;
          span.char_end = start + utf8::Length(word);
          span.surface = word;
          spans.push_back(std::move(span));
          pos = close + 1;
        }
        text += kTails[rng.Below(kTails.size())];
        if (!seen.insert(NormalizeKey(text)).second) continue;
        Utterance u;
        u.id = fmt::format("{}_u{:04d}", speaker, k);
        u.speaker_id = speaker;
        u.audio_ref = fmt::format("mock/{}/{}.wav", speaker, u.id);
        u.reference_transcript = std::move(text);
        u.gold_spans = std::move(spans);
        utterances.push_back(std::move(u));
        break;
      }
    }
  }
  return DatasetManifest(std::move(utterances),
                         fmt::format("synthetic:seed={}", options.seed));
}

}  // namespace speechveil

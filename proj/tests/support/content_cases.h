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

#ifndef SPEECHVEIL_TESTS_SUPPORT_CONTENT_CASES_H_
#define SPEECHVEIL_TESTS_SUPPORT_CONTENT_CASES_H_

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "speechveil/content/replacement.h"
#include "speechveil/core/types.h"
#include "speechveil/core/utf8.h"

namespace speechveil::testing {

// Random transcripts over a mixed-script vocabulary with word-aligned spans.
struct Case {
  AnnotatedTranscript transcript;
  std::vector<std::string> words;
  std::vector<std::pair<std::size_t, std::size_t>> span_words;
};

inline Case RandomCase(std::mt19937_64& rng) {
  static const std::vector<std::string> vocab = {
      "i",    "met",  "anna", "in",    "paris", "café", "naïve",
      "東京", "on",   "the",  "bank",  "ñu",    "at",   "5"};
  Case c;
  const std::size_t n = 1 + rng() % 10;
  for (std::size_t i = 0; i < n; ++i) c.words.push_back(vocab[rng() % vocab.size()]);
  std::vector<std::size_t> starts;  // char offsets of each word
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) text += ' ';
    starts.push_back(utf8::Length(text));
    text += c.words[i];
  }
  std::vector<EntitySpan> spans;
  std::size_t w = 0;
  while (w < n) {
    if (rng() % 3 == 0) {
      const std::size_t len = 1 + rng() % std::min<std::size_t>(2, n - w);
      const std::size_t end_word = w + len - 1;
      spans.push_back(MakeSpan(
          text, kAllEntityLabels[rng() % kAllEntityLabels.size()], starts[w],
          starts[end_word] + utf8::Length(c.words[end_word])));
      c.span_words.emplace_back(w, w + len);
      w += len + 1;
    } else {
      ++w;
    }
  }
  c.transcript = AnnotatedTranscript(text, std::move(spans));
  return c;
}

inline std::string RandomReplacement(std::mt19937_64& rng) {
  static const std::vector<std::string> vocab = {"brian", "lyon", "Ørsted",
                                                 "大阪", "x", "four hundred"};
  return vocab[rng() % vocab.size()];
}

// A random subset plan plus the expected output computed by replacing whole
// words and re-joining with single spaces.
struct OracleCase {
  ReplacementPlan plan;
  std::string expected;
};

inline OracleCase RandomPlanWithSplitJoinOracle(const Case& c, std::mt19937_64& rng) {
  OracleCase out;
  std::vector<std::string> words = c.words;
  std::vector<bool> dropped(words.size(), false);
  for (std::size_t k = 0; k < c.transcript.spans().size(); ++k) {
    if (rng() % 4 == 0) continue;  // subsets are allowed
    const std::string r = RandomReplacement(rng);
    out.plan.entries.push_back({c.transcript.spans()[k], r, false});
    const auto [a, b] = c.span_words[k];
    words[a] = r;
    for (std::size_t j = a + 1; j < b; ++j) dropped[j] = true;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (dropped[i]) continue;
    if (!out.expected.empty()) out.expected += ' ';
    out.expected += words[i];
  }
  return out;
}

// A full plan and the reply an obedient model would send for it.
struct ReplyCase {
  ReplacementPlan plan;
  std::string reply;
};

inline ReplyCase RandomWellFormedReply(const Case& c, std::mt19937_64& rng) {
  ReplyCase out;
  for (const EntitySpan& span : c.transcript.spans()) {
    out.plan.entries.push_back({span, RandomReplacement(rng), false});
  }
  out.reply = "Here it is: ####" + ApplyReplacements(c.transcript, out.plan).text + "####";
  return out;
}

}  // namespace speechveil::testing

#endif  // SPEECHVEIL_TESTS_SUPPORT_CONTENT_CASES_H_

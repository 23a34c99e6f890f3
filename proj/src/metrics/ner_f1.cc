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

#include "speechveil/metrics/ner_f1.h"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"

namespace speechveil {
namespace {

using Key = std::pair<EntityLabel, std::string>;

std::map<Key, std::size_t> Multiset(const AnnotatedTranscript& t) {
  std::map<Key, std::size_t> out;
  for (const EntitySpan& span : t.spans()) {
    ++out[{span.label, NormalizeForScoring(span.surface)}];
  }
  return out;
}

}  // namespace

NerScore ComputeNerF1(const std::vector<AnnotatedTranscript>& gold,
                      const std::vector<AnnotatedTranscript>& predicted) {
  if (gold.size() != predicted.size()) {
    throw ValidationError(fmt::format(
        "gold has {} transcripts but predicted has {}", gold.size(),
        predicted.size()));
  }
  NerScore score;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = Multiset(gold[i]);
    const auto p = Multiset(predicted[i]);
    for (const auto& [key, n] : g) {
      score.gold_total += n;
      if (const auto it = p.find(key); it != p.end()) {
        score.true_positives += std::min(n, it->second);
      }
    }
    for (const auto& [key, n] : p) score.predicted_total += n;
  }
  if (score.gold_total == 0 && score.predicted_total == 0) {
    score.precision = score.recall = score.f1 = 1.0;
    return score;
  }
  const auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  score.precision = ratio(score.true_positives, score.predicted_total);
  score.recall = ratio(score.true_positives, score.gold_total);
  score.f1 = ratio(2 * score.true_positives,
                   score.predicted_total + score.gold_total);
  return score;
}

}  // namespace speechveil

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

#include "speechveil/metrics/wer.h"

#include <algorithm>

#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"

namespace speechveil {

double AlignmentTrace::wer() const {
  return static_cast<double>(edits()) /
         static_cast<double>(std::max<std::size_t>(1, reference_length()));
}

AlignmentTrace AlignTokens(const std::vector<std::string>& reference,
                           const std::vector<std::string>& hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  const auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) cost[at(i, 0)] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[at(0, j)] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag =
          cost[at(i - 1, j - 1)] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      cost[at(i, j)] =
          std::min({diag, cost[at(i - 1, j)] + 1, cost[at(i, j - 1)] + 1});
    }
  }

  AlignmentTrace trace;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (cost[at(i, j)] == cost[at(i - 1, j - 1)] + (same ? 0 : 1)) {
        trace.pairs.push_back({same ? EditOp::kHit : EditOp::kSubstitution,
                               reference[i - 1], hypothesis[j - 1]});
        ++(same ? trace.hits : trace.substitutions);
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[at(i, j)] == cost[at(i - 1, j)] + 1) {
      trace.pairs.push_back({EditOp::kDeletion, reference[i - 1], std::nullopt});
      ++trace.deletions;
      --i;
    } else {
      trace.pairs.push_back({EditOp::kInsertion, std::nullopt, hypothesis[j - 1]});
      ++trace.insertions;
      --j;
    }
  }
  std::reverse(trace.pairs.begin(), trace.pairs.end());
  return trace;
}

AlignmentTrace Wer(std::string_view reference, std::string_view hypothesis) {
  return AlignTokens(ScoringTokens(reference), ScoringTokens(hypothesis));
}

CorpusWer PoolTraces(const std::vector<AlignmentTrace>& traces) {
  if (traces.empty()) {
    throw UndefinedInputError("corpus WER of an empty corpus is undefined");
  }
  CorpusWer out;
  for (const AlignmentTrace& t : traces) {
    out.edits += t.edits();
    out.reference_words += t.reference_length();
  }
  out.pairs = traces.size();
  out.wer = static_cast<double>(out.edits) /
            static_cast<double>(std::max<std::size_t>(1, out.reference_words));
  return out;
}

CorpusWer ComputeCorpusWer(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<AlignmentTrace> traces;
  traces.reserve(pairs.size());
  for (const auto& [ref, hyp] : pairs) traces.push_back(Wer(ref, hyp));
  return PoolTraces(traces);
}

}  // namespace speechveil

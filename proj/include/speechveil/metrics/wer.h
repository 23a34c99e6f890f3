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

#ifndef SPEECHVEIL_METRICS_WER_H_
#define SPEECHVEIL_METRICS_WER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace speechveil {

enum class EditOp { kHit, kSubstitution, kDeletion, kInsertion };

struct AlignedPair {
  EditOp op = EditOp::kHit;
  std::optional<std::string> reference;
  std::optional<std::string> hypothesis;

  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

struct AlignmentTrace {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t hits = 0;
  std::vector<AlignedPair> pairs;

  std::size_t edits() const { return substitutions + deletions + insertions; }
  std::size_t reference_length() const { return substitutions + deletions + hits; }
  std::size_t hypothesis_length() const {
    return substitutions + insertions + hits;
  }
  // (S + D + I) / max(1, reference length).
  double wer() const;
};

// Unit-cost minimum edit alignment of token sequences. Among equal-cost
// alignments the backtrace prefers hit/substitution, then deletion, then
// insertion.
AlignmentTrace AlignTokens(const std::vector<std::string>& reference,
                           const std::vector<std::string>& hypothesis);

// Applies the scoring normalization to both sides, then aligns.
AlignmentTrace Wer(std::string_view reference, std::string_view hypothesis);

struct CorpusWer {
  std::size_t edits = 0;
  std::size_t reference_words = 0;
  std::size_t pairs = 0;
  // Pooled: total edits / max(1, total reference words).
  double wer = 0.0;
};

// Throws UndefinedInputError for an empty list.
CorpusWer ComputeCorpusWer(
    const std::vector<std::pair<std::string, std::string>>& pairs);
CorpusWer PoolTraces(const std::vector<AlignmentTrace>& traces);

}  // namespace speechveil

#endif  // SPEECHVEIL_METRICS_WER_H_

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

#ifndef SPEECHVEIL_CONTENT_REPLACEMENT_H_
#define SPEECHVEIL_CONTENT_REPLACEMENT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speechveil/content/policy.h"
#include "speechveil/core/types.h"

namespace speechveil {

struct PlannedReplacement {
  EntitySpan span;
  std::string replacement;
  // The recovered replacement equals the original surface under NormalizeKey;
  // the span counts as a failed replacement.
  bool unchanged = false;

  friend bool operator==(const PlannedReplacement&,
                         const PlannedReplacement&) = default;
};

struct ReplacementPlan {
  std::string transcript_id;
  std::vector<PlannedReplacement> entries;  // ordered by span.char_start

  friend bool operator==(const ReplacementPlan&,
                         const ReplacementPlan&) = default;
};

struct SanitizedTranscript {
  std::string text;
  ReplacementPlan applied;
  AnnotatedTranscript source;
};

struct ReplacementVerdict {
  EntitySpan span;
  std::optional<std::string> replacement;
  bool correct = false;
  std::string reason;  // empty when correct

  friend bool operator==(const ReplacementVerdict&,
                         const ReplacementVerdict&) = default;
};

struct VerificationResult {
  std::vector<ReplacementVerdict> verdicts;
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy = 1.0;  // vacuously 1 for zero spans
};

// Every span replaced by its own surface.
ReplacementPlan IdentityPlan(const AnnotatedTranscript& transcript,
                             std::string transcript_id = "");

// Extracts the fenced sentence and aligns it against the transcript by
// anchoring on the unchanged text between spans. Throws ParseError for a
// missing fence and AlignmentError when the anchors cannot be matched.
ReplacementPlan ParseLlmReply(std::string_view reply,
                              const ReplacementPolicy& policy,
                              const AnnotatedTranscript& transcript,
                              std::string transcript_id = "");

// Substitutes each planned span left to right. Throws ValidationError when a
// plan span is not a span of the transcript or plan entries overlap.
SanitizedTranscript ApplyReplacements(const AnnotatedTranscript& transcript,
                                      const ReplacementPlan& plan);

// A span is correct iff its replacement sits at the shifted position, it
// differs from the surface under NormalizeKey, and the surface no longer
// starts at that position.
VerificationResult VerifyReplacements(const AnnotatedTranscript& transcript,
                                      const SanitizedTranscript& sanitized);

}  // namespace speechveil

#endif  // SPEECHVEIL_CONTENT_REPLACEMENT_H_

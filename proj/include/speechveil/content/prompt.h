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

#ifndef SPEECHVEIL_CONTENT_PROMPT_H_
#define SPEECHVEIL_CONTENT_PROMPT_H_

#include <string>
#include <string_view>

#include "speechveil/content/policy.h"
#include "speechveil/core/types.h"

namespace speechveil {

// Bumped whenever the wording below changes; golden fixtures live under
// tests/golden/prompts/<version>/.
inline constexpr std::string_view kPromptTemplateVersion = "v1";

// "The sentence contains 2 named entities: a PERSON entity 'anna'; a PLACE
// entity 'paris'." One clause per span, in span order.
std::string BuildEntityReport(const AnnotatedTranscript& transcript);

// Sections, in order: task instruction, few-shot examples, fenced sentence,
// entity report, output-format instruction.
std::string BuildLlmPrompt(const AnnotatedTranscript& transcript,
                           std::string_view report,
                           const ReplacementPolicy& policy);

// Wraps `payload` in `delimiter` on both sides. Occurrences of the delimiter
// inside the payload are escaped with a backslash; throws PromptError if the
// result would not extract back to exactly `payload`.
std::string FencePayload(std::string_view payload, std::string_view delimiter);

// Inverse of FencePayload over the first fenced block in `text`. Throws
// ParseError when the opening or closing delimiter is missing.
std::string ExtractFenced(std::string_view text, std::string_view delimiter);

}  // namespace speechveil

#endif  // SPEECHVEIL_CONTENT_PROMPT_H_

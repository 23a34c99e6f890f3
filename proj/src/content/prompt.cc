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

#include "speechveil/content/prompt.h"

#include <optional>

#include <fmt/format.h>

#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

constexpr std::string_view kPreamble =
    "You are a privacy assistant that rewrites transcribed speech to remove "
    "sensitive information.";

constexpr std::string_view kKeepRest =
    "Keep every other word exactly as it appears in the original sentence.";

std::string_view Article(std::string_view word) {
  if (word.empty()) return "a";
  switch (word.front()) {
    case 'A': case 'E': case 'I': case 'O': case 'U':
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return "an";
    default:
      return "a";
  }
}

std::string Escaped(std::string_view payload, std::string_view delimiter) {
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t hit = payload.find(delimiter, pos);
    if (hit == std::string_view::npos) break;
    out.append(payload.substr(pos, hit - pos));
    out.push_back('\\');
    out.append(delimiter);
    pos = hit + delimiter.size();
  }
  out.append(payload.substr(pos));
  return out;
}

std::optional<std::size_t> FindUnescaped(std::string_view text,
                                         std::string_view delimiter,
                                         std::size_t from) {
  for (std::size_t hit = text.find(delimiter, from);
       hit != std::string_view::npos; hit = text.find(delimiter, hit + 1)) {
    if (hit == 0 || text[hit - 1] != '\\') return hit;
  }
  return std::nullopt;
}

}  // namespace

std::string BuildEntityReport(const AnnotatedTranscript& transcript) {
  const auto& spans = transcript.spans();
  if (spans.empty()) return "The sentence contains no named entities.";
  std::string report = fmt::format(
      "The sentence contains {} named {}:", spans.size(),
      spans.size() == 1 ? "entity" : "entities");
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string_view label = ToString(spans[i].label);
    report += fmt::format("{} {} {} entity '{}'", i == 0 ? "" : ";",
                          Article(label), label, spans[i].surface);
  }
  report.push_back('.');
  return report;
}

std::string FencePayload(std::string_view payload, std::string_view delimiter) {
  if (delimiter.empty()) throw PromptError("delimiter must be non-empty");
  std::string fenced(delimiter);
  fenced += Escaped(payload, delimiter);
  fenced += delimiter;
  std::string round_trip;
  try {
    round_trip = ExtractFenced(fenced, delimiter);
  } catch (const ParseError&) {
    round_trip.clear();
  }
  if (round_trip != payload) {
    throw PromptError(fmt::format(
        "cannot fence payload with delimiter '{}': escaping is ambiguous",
        delimiter));
  }
  return fenced;
}

std::string ExtractFenced(std::string_view text, std::string_view delimiter) {
  const auto open = FindUnescaped(text, delimiter, 0);
  if (!open) {
    throw ParseError(
        fmt::format("reply has no opening delimiter '{}'", delimiter));
  }
  const std::size_t begin = *open + delimiter.size();
  const auto close = FindUnescaped(text, delimiter, begin);
  if (!close) {
    throw ParseError(
        fmt::format("reply has no closing delimiter '{}'", delimiter));
  }
  const std::string_view body = text.substr(begin, *close - begin);
  std::string escaped_delimiter = "\\";
  escaped_delimiter += delimiter;
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t hit = body.find(escaped_delimiter, pos);
    if (hit == std::string_view::npos) break;
    out.append(body.substr(pos, hit - pos));
    out.append(delimiter);
    pos = hit + escaped_delimiter.size();
  }
  out.append(body.substr(pos));
  return out;
}

std::string BuildLlmPrompt(const AnnotatedTranscript& transcript,
                           std::string_view report,
                           const ReplacementPolicy& policy) {
  policy.Validate();
  const std::string_view delim = policy.delimiter;
  std::string prompt(kPreamble);
  prompt += "\n\n";

  if (transcript.spans().empty()) {
    prompt +=
        "Task: The sentence contains no named entities. Return the sentence "
        "unchanged.\n";
  } else if (policy.mode == ReplacementMode::kDissimilar) {
    prompt += fmt::format(
        "Task: Replace every named entity listed below with dissimilar words "
        "of the same entity type. {}\n",
        kKeepRest);
  } else {
    prompt += fmt::format(
        "Task: Replace every named entity listed below using the fixed "
        "mapping. A mapping key is either an entity type or the exact text of "
        "an entity; an exact-text key takes precedence. {}\n",
        kKeepRest);
    prompt += "Mapping:\n";
    for (const MappingEntry& entry : policy.mapping) {
      prompt += fmt::format("- {} -> {}\n", entry.key, entry.replacement);
    }
  }

  if (!policy.few_shot_examples.empty()) {
    prompt += "\nExamples:\n";
    for (const FewShotExample& example : policy.few_shot_examples) {
      prompt += fmt::format("Input: {}\nOutput: {}\n",
                            FencePayload(example.input, delim),
                            FencePayload(example.output, delim));
    }
  }

  prompt += fmt::format("\nSentence: {}\n",
                        FencePayload(transcript.text(), delim));
  prompt += fmt::format("\nEntities: {}\n", report);
  prompt += fmt::format(
      "\nOutput format: Return only the rewritten sentence between {0} and "
      "{0}, with no explanation.\n",
      delim);
  return prompt;
}

}  // namespace speechveil

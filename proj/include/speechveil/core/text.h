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

#ifndef SPEECHVEIL_CORE_TEXT_H_
#define SPEECHVEIL_CORE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace speechveil {

// Case folding is ASCII-only; other code points pass through untouched.
std::string ToLowerAscii(std::string_view text);
std::string ToUpperAscii(std::string_view text);

bool IsAsciiSpace(char c);
std::string_view TrimAscii(std::string_view text);

// Collapses runs of ASCII whitespace into a single space and trims the ends.
std::string CollapseWhitespace(std::string_view text);

// Key used for transcript deduplication and for "did the replacement change
// anything" checks: lowercase, whitespace collapsed, trimmed.
std::string NormalizeKey(std::string_view text);

// Scoring normalization shared by WER and NER F1: uppercase, punctuation
// replaced by spaces except apostrophes between two alphanumerics, whitespace
// tokenization.
std::vector<std::string> ScoringTokens(std::string_view text);
std::string NormalizeForScoring(std::string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);

}  // namespace speechveil

#endif  // SPEECHVEIL_CORE_TEXT_H_

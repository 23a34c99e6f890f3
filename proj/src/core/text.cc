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

#include "speechveil/core/text.h"

#include <cctype>

namespace speechveil {
namespace {

bool IsAsciiAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool IsAsciiPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string ToUpperAscii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view TrimAscii(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && IsAsciiSpace(text[begin])) ++begin;
  while (end > begin && IsAsciiSpace(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  for (const std::string& token : SplitWhitespace(text)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

std::string NormalizeKey(std::string_view text) {
  return CollapseWhitespace(ToLowerAscii(text));
}

std::vector<std::string> ScoringTokens(std::string_view text) {
  std::string cleaned(text);
  for (std::size_t i = 0; i < cleaned.size(); ++i) {
    const char c = cleaned[i];
    if (!IsAsciiPunct(c)) continue;
    // Bytes >= 0x80 are never punctuation here, so "alphanumeric neighbour"
    // is judged on the original text.
    const bool intra_word_apostrophe = c == '\'' && i > 0 &&
                                       i + 1 < text.size() &&
                                       IsAsciiAlnum(text[i - 1]) &&
                                       IsAsciiAlnum(text[i + 1]);
    if (!intra_word_apostrophe) cleaned[i] = ' ';
  }
  return SplitWhitespace(ToUpperAscii(cleaned));
}

std::string NormalizeForScoring(std::string_view text) {
  std::string out;
  for (const std::string& token : ScoringTokens(text)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

}  // namespace speechveil

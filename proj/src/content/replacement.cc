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

#include "speechveil/content/replacement.h"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "speechveil/content/prompt.h"
#include "speechveil/core/errors.h"
#include "speechveil/core/text.h"
#include "speechveil/core/utf8.h"

namespace speechveil {
namespace {

char FoldAscii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool MatchesAt(std::string_view text, std::size_t pos, std::string_view anchor,
               bool fold_case) {
  if (pos + anchor.size() > text.size()) return false;
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    const char a = text[pos + i];
    const char b = anchor[i];
    if (fold_case ? FoldAscii(a) != FoldAscii(b) : a != b) return false;
  }
  return true;
}

bool IsBoundary(std::string_view text, std::size_t pos) {
  return pos == text.size() || !utf8::IsContinuationByte(text[pos]);
}

// Finds cut points so that reply == seg[0] r[1] seg[1] ... r[n] seg[n] with
// every r non-empty. cuts[k] = (start of r[k+1], start of seg[k+1]).
class AnchorAligner {
 public:
  AnchorAligner(std::string_view reply, const std::vector<std::string>& segs,
                bool fold_case)
      : reply_(reply), segs_(segs), fold_case_(fold_case) {}

  bool Run(std::vector<std::pair<std::size_t, std::size_t>>* cuts) {
    if (!MatchesAt(reply_, 0, segs_.front(), fold_case_)) return false;
    cuts->clear();
    return Step(1, segs_.front().size(), cuts);
  }

 private:
  bool Step(std::size_t k, std::size_t pos,
            std::vector<std::pair<std::size_t, std::size_t>>* cuts) {
    const std::string& seg = segs_[k];
    const bool last = k + 1 == segs_.size();
    if (last) {
      if (reply_.size() < seg.size()) return false;
      const std::size_t at = reply_.size() - seg.size();
      if (at <= pos || !IsBoundary(reply_, at) ||
          !MatchesAt(reply_, at, seg, fold_case_)) {
        return false;
      }
      cuts->emplace_back(pos, at);
      return true;
    }
    if (failed_.contains({k, pos})) return false;
    for (std::size_t at = pos + 1; at + seg.size() <= reply_.size(); ++at) {
      if (!IsBoundary(reply_, at) || !MatchesAt(reply_, at, seg, fold_case_)) {
        continue;
      }
      cuts->emplace_back(pos, at);
      if (Step(k + 1, at + seg.size(), cuts)) return true;
      cuts->pop_back();
    }
    failed_.insert({k, pos});
    return false;
  }

  std::string_view reply_;
  const std::vector<std::string>& segs_;
  bool fold_case_;
  std::set<std::pair<std::size_t, std::size_t>> failed_;
};

std::vector<std::string> InterSpanSegments(const AnnotatedTranscript& t) {
  std::vector<std::string> segs;
  std::size_t cursor = 0;
  for (const EntitySpan& span : t.spans()) {
    segs.push_back(utf8::Substr(t.text(), cursor, span.char_start));
    cursor = span.char_end;
  }
  segs.push_back(utf8::Substr(t.text(), cursor, t.length()));
  return segs;
}

}  // namespace

ReplacementPlan IdentityPlan(const AnnotatedTranscript& transcript,
                             std::string transcript_id) {
  ReplacementPlan plan;
  plan.transcript_id = std::move(transcript_id);
  for (const EntitySpan& span : transcript.spans()) {
    plan.entries.push_back({span, span.surface, true});
  }
  return plan;
}

ReplacementPlan ParseLlmReply(std::string_view reply,
                              const ReplacementPolicy& policy,
                              const AnnotatedTranscript& transcript,
                              std::string transcript_id) {
  if (TrimAscii(reply).empty()) throw ParseError("empty LLM reply");
  const std::string fenced = ExtractFenced(reply, policy.delimiter);
  const std::string_view sentence = TrimAscii(fenced);

  ReplacementPlan plan;
  plan.transcript_id = std::move(transcript_id);
  if (transcript.spans().empty()) return plan;

  const std::vector<std::string> segs = InterSpanSegments(transcript);
  std::vector<std::pair<std::size_t, std::size_t>> cuts;
  // Exact anchors first; models often re-case words, so fall back to an
  // ASCII case-insensitive match before giving up.
  if (!AnchorAligner(sentence, segs, false).Run(&cuts) &&
      !AnchorAligner(sentence, segs, true).Run(&cuts)) {
    throw AlignmentError(fmt::format(
        "cannot align reply '{}' against '{}'", sentence, transcript.text()));
  }
  for (std::size_t k = 0; k < transcript.spans().size(); ++k) {
    const EntitySpan& span = transcript.spans()[k];
    std::string replacement(
        sentence.substr(cuts[k].first, cuts[k].second - cuts[k].first));
    const bool unchanged = NormalizeKey(replacement) == NormalizeKey(span.surface);
    plan.entries.push_back({span, std::move(replacement), unchanged});
  }
  return plan;
}

SanitizedTranscript ApplyReplacements(const AnnotatedTranscript& transcript,
                                      const ReplacementPlan& plan) {
  std::vector<const PlannedReplacement*> entries;
  for (const PlannedReplacement& entry : plan.entries) {
    const bool known = std::any_of(
        transcript.spans().begin(), transcript.spans().end(),
        [&](const EntitySpan& s) { return s.SameRange(entry.span); });
    if (!known) {
      throw ValidationError(fmt::format(
          "plan span [{}, {}) is not a span of the transcript",
          entry.span.char_start, entry.span.char_end));
    }
    if (entry.replacement.empty()) {
      throw ValidationError("replacement text must be non-empty");
    }
    entries.push_back(&entry);
  }
  std::sort(entries.begin(), entries.end(),
            [](const PlannedReplacement* a, const PlannedReplacement* b) {
              return a->span.char_start < b->span.char_start;
            });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i]->span.char_start < entries[i - 1]->span.char_end) {
      throw ValidationError(fmt::format(
          "overlapping plan entries [{}, {}) and [{}, {})",
          entries[i - 1]->span.char_start, entries[i - 1]->span.char_end,
          entries[i]->span.char_start, entries[i]->span.char_end));
    }
  }

  SanitizedTranscript out;
  out.source = transcript;
  out.applied.transcript_id = plan.transcript_id;
  const std::string& text = transcript.text();
  std::size_t byte_cursor = 0;
  std::size_t char_cursor = 0;
  for (const PlannedReplacement* entry : entries) {
    const std::size_t start_byte =
        byte_cursor + utf8::ByteOffset(std::string_view(text).substr(byte_cursor),
                                       entry->span.char_start - char_cursor);
    const std::size_t end_byte =
        start_byte + utf8::ByteOffset(std::string_view(text).substr(start_byte),
                                      entry->span.length());
    out.text.append(text, byte_cursor, start_byte - byte_cursor);
    out.text.append(entry->replacement);
    byte_cursor = end_byte;
    char_cursor = entry->span.char_end;
    out.applied.entries.push_back(*entry);
  }
  out.text.append(text, byte_cursor, std::string::npos);
  return out;
}

VerificationResult VerifyReplacements(const AnnotatedTranscript& transcript,
                                      const SanitizedTranscript& sanitized) {
  const std::u32string output = utf8::Decode(sanitized.text);
  std::vector<const PlannedReplacement*> entries;
  for (const PlannedReplacement& entry : sanitized.applied.entries) {
    entries.push_back(&entry);
  }
  std::sort(entries.begin(), entries.end(),
            [](const PlannedReplacement* a, const PlannedReplacement* b) {
              return a->span.char_start < b->span.char_start;
            });

  VerificationResult result;
  result.total = transcript.spans().size();
  for (const EntitySpan& span : transcript.spans()) {
    ReplacementVerdict verdict;
    verdict.span = span;
    // Shift introduced by every planned replacement that precedes this span.
    std::ptrdiff_t shift = 0;
    const PlannedReplacement* match = nullptr;
    for (const PlannedReplacement* entry : entries) {
      if (entry->span.SameRange(span)) {
        match = entry;
        break;
      }
      if (entry->span.char_end <= span.char_start) {
        shift += static_cast<std::ptrdiff_t>(utf8::Length(entry->replacement)) -
                 static_cast<std::ptrdiff_t>(entry->span.length());
      }
    }
    if (!match) {
      verdict.reason = "not replaced";
      result.verdicts.push_back(std::move(verdict));
      continue;
    }
    verdict.replacement = match->replacement;
    const std::size_t pos = static_cast<std::size_t>(
        static_cast<std::ptrdiff_t>(span.char_start) + shift);
    const std::u32string replacement = utf8::Decode(match->replacement);
    const std::u32string surface = utf8::Decode(span.surface);
    const auto slice = [&](std::size_t len) {
      return pos <= output.size() ? output.substr(pos, len) : std::u32string();
    };
    if (slice(replacement.size()) != replacement) {
      verdict.reason = "replacement not found at shifted position";
    } else if (NormalizeKey(match->replacement) == NormalizeKey(span.surface)) {
      verdict.reason = "replacement equals original surface";
    } else if (slice(surface.size()) == surface) {
      verdict.reason = "original surface still present";
    } else {
      verdict.correct = true;
      ++result.correct;
    }
    result.verdicts.push_back(std::move(verdict));
  }
  result.accuracy = result.total == 0
                        ? 1.0
                        : static_cast<double>(result.correct) /
                              static_cast<double>(result.total);
  return result;
}

}  // namespace speechveil

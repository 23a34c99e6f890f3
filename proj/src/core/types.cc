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

#include "speechveil/core/types.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/utf8.h"

namespace speechveil {

std::string_view ToString(EntityLabel label) {
  switch (label) {
    case EntityLabel::kPlace:
      return "PLACE";
    case EntityLabel::kQuant:
      return "QUANT";
    case EntityLabel::kOrg:
      return "ORG";
    case EntityLabel::kWhen:
      return "WHEN";
    case EntityLabel::kNorp:
      return "NORP";
    case EntityLabel::kPerson:
      return "PERSON";
    case EntityLabel::kLaw:
      return "LAW";
  }
  return "UNKNOWN";
}

std::optional<EntityLabel> TryParseEntityLabel(std::string_view name) {
  for (EntityLabel label : kAllEntityLabels) {
    if (ToString(label) == name) return label;
  }
  return std::nullopt;
}

EntityLabel ParseEntityLabel(std::string_view name) {
  if (auto label = TryParseEntityLabel(name)) return *label;
  throw ValidationError(fmt::format("unknown entity label '{}'", name));
}

EntitySpan MakeSpan(std::string_view text, EntityLabel label,
                    std::size_t start, std::size_t end) {
  if (start >= end) {
    throw BoundsError(fmt::format("empty or inverted span [{}, {})", start,
                                  end));
  }
  EntitySpan span;
  span.label = label;
  span.char_start = start;
  span.char_end = end;
  span.surface = utf8::Substr(text, start, end);
  return span;
}

void ValidateSpan(std::string_view text, const EntitySpan& span) {
  const std::size_t length = utf8::Length(text);
  if (span.char_start >= span.char_end || span.char_end > length) {
    throw BoundsError(fmt::format("span [{}, {}) out of range for text of {} "
                                  "characters",
                                  span.char_start, span.char_end, length));
  }
  const std::string slice = utf8::Substr(text, span.char_start, span.char_end);
  if (slice != span.surface) {
    throw ValidationError(fmt::format(
        "span surface '{}' does not match text slice '{}' at [{}, {})",
        span.surface, slice, span.char_start, span.char_end));
  }
  if (span.time_start && span.time_end && *span.time_end < *span.time_start) {
    throw ValidationError("span time_end precedes time_start");
  }
}

std::vector<EntitySpan> ResolveOverlaps(std::vector<EntitySpan> spans) {
  std::stable_sort(spans.begin(), spans.end(),
                   [](const EntitySpan& a, const EntitySpan& b) {
                     if (a.length() != b.length()) {
                       return a.length() > b.length();
                     }
                     return a.char_start < b.char_start;
                   });
  std::vector<EntitySpan> kept;
  for (EntitySpan& span : spans) {
    const bool clashes =
        std::any_of(kept.begin(), kept.end(),
                    [&](const EntitySpan& k) { return k.Overlaps(span); });
    if (!clashes) kept.push_back(std::move(span));
  }
  std::sort(kept.begin(), kept.end(),
            [](const EntitySpan& a, const EntitySpan& b) {
              return a.char_start < b.char_start;
            });
  return kept;
}

AnnotatedTranscript::AnnotatedTranscript(std::string text,
                                         std::vector<EntitySpan> spans)
    : text_(std::move(text)), spans_(std::move(spans)) {
  length_ = utf8::Length(text_);
  for (std::size_t i = 0; i < spans_.size(); ++i) {
    ValidateSpan(text_, spans_[i]);
    if (i > 0 && spans_[i].char_start < spans_[i - 1].char_end) {
      throw ValidationError(fmt::format(
          "spans must be strictly ordered and non-overlapping: [{}, {}) "
          "follows [{}, {})",
          spans_[i].char_start, spans_[i].char_end, spans_[i - 1].char_start,
          spans_[i - 1].char_end));
    }
  }
}

AnnotatedTranscript AnnotatedTranscript::WithResolvedSpans(
    std::string text, std::vector<EntitySpan> spans) {
  for (const EntitySpan& span : spans) ValidateSpan(text, span);
  return AnnotatedTranscript(std::move(text),
                             ResolveOverlaps(std::move(spans)));
}

std::string SliceSpan(const AnnotatedTranscript& transcript,
                      const EntitySpan& span) {
  if (span.char_start >= span.char_end ||
      span.char_end > transcript.length()) {
    throw BoundsError(fmt::format("span [{}, {}) out of range for text of {} "
                                  "characters",
                                  span.char_start, span.char_end,
                                  transcript.length()));
  }
  return utf8::Substr(transcript.text(), span.char_start, span.char_end);
}

DatasetManifest::DatasetManifest(std::vector<Utterance> utterances,
                                 std::string provenance)
    : utterances_(std::move(utterances)), provenance_(std::move(provenance)) {
  std::unordered_set<std::string> seen;
  for (const Utterance& u : utterances_) {
    if (u.id.empty()) throw ValidationError("utterance with empty id");
    if (u.audio_ref.empty()) {
      throw ValidationError(
          fmt::format("utterance '{}' has an empty audio_ref", u.id));
    }
    if (!seen.insert(u.id).second) {
      throw ValidationError(fmt::format("duplicate utterance id '{}'", u.id));
    }
  }
}

std::size_t DatasetManifest::SpeakerCount() const {
  std::set<std::string_view> speakers;
  for (const Utterance& u : utterances_) speakers.insert(u.speaker_id);
  return speakers.size();
}

const Utterance* DatasetManifest::Find(std::string_view id) const {
  for (const Utterance& u : utterances_) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

}  // namespace speechveil

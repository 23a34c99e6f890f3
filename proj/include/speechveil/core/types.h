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

#ifndef SPEECHVEIL_CORE_TYPES_H_
#define SPEECHVEIL_CORE_TYPES_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace speechveil {

// The closed SLUE-VoxPopuli entity tag set.
enum class EntityLabel { kPlace, kQuant, kOrg, kWhen, kNorp, kPerson, kLaw };

inline constexpr std::array<EntityLabel, 7> kAllEntityLabels = {
    EntityLabel::kPlace, EntityLabel::kQuant, EntityLabel::kOrg,
    EntityLabel::kWhen,  EntityLabel::kNorp,  EntityLabel::kPerson,
    EntityLabel::kLaw};

std::string_view ToString(EntityLabel label);
// Exact, case-sensitive match against the canonical names.
EntityLabel ParseEntityLabel(std::string_view name);
std::optional<EntityLabel> TryParseEntityLabel(std::string_view name);

// A named entity inside a transcript. Offsets count Unicode scalar values;
// char_end is exclusive.
struct EntitySpan {
  EntityLabel label = EntityLabel::kPlace;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string surface;
  std::optional<double> time_start;
  std::optional<double> time_end;

  std::size_t length() const { return char_end - char_start; }
  bool Overlaps(const EntitySpan& other) const {
    return char_start < other.char_end && other.char_start < char_end;
  }
  bool SameRange(const EntitySpan& other) const {
    return label == other.label && char_start == other.char_start &&
           char_end == other.char_end;
  }
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Builds a span whose surface is the [start, end) slice of `text`.
EntitySpan MakeSpan(std::string_view text, EntityLabel label,
                    std::size_t start, std::size_t end);

// Throws BoundsError for out-of-range offsets and ValidationError when the
// surface does not equal the slice.
void ValidateSpan(std::string_view text, const EntitySpan& span);

// Canonical overlap resolution: the longer span wins, ties keep the earlier
// start. Output is sorted by char_start.
std::vector<EntitySpan> ResolveOverlaps(std::vector<EntitySpan> spans);

class AnnotatedTranscript {
 public:
  AnnotatedTranscript() = default;
  // Strict: spans must be valid against `text`, sorted and non-overlapping.
  AnnotatedTranscript(std::string text, std::vector<EntitySpan> spans);

  // Validates each span, then resolves overlaps before the strict checks.
  static AnnotatedTranscript WithResolvedSpans(std::string text,
                                               std::vector<EntitySpan> spans);

  const std::string& text() const { return text_; }
  const std::vector<EntitySpan>& spans() const { return spans_; }
  std::size_t length() const { return length_; }

  friend bool operator==(const AnnotatedTranscript&,
                         const AnnotatedTranscript&) = default;

 private:
  std::string text_;
  std::vector<EntitySpan> spans_;
  std::size_t length_ = 0;
};

std::string SliceSpan(const AnnotatedTranscript& transcript,
                      const EntitySpan& span);

struct Utterance {
  std::string id;
  std::string speaker_id;
  std::string audio_ref;
  std::optional<std::string> reference_transcript;
  // Gold entity annotations against reference_transcript, when known.
  std::optional<std::vector<EntitySpan>> gold_spans;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

class DatasetManifest {
 public:
  DatasetManifest() = default;
  // Throws ValidationError on duplicate ids or empty audio_ref.
  DatasetManifest(std::vector<Utterance> utterances, std::string provenance);

  const std::vector<Utterance>& utterances() const { return utterances_; }
  const std::string& provenance() const { return provenance_; }
  std::size_t size() const { return utterances_.size(); }
  bool empty() const { return utterances_.empty(); }
  std::size_t SpeakerCount() const;
  const Utterance* Find(std::string_view id) const;

  friend bool operator==(const DatasetManifest&,
                         const DatasetManifest&) = default;

 private:
  std::vector<Utterance> utterances_;
  std::string provenance_;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_CORE_TYPES_H_

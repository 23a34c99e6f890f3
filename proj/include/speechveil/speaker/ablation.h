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

#ifndef SPEECHVEIL_SPEAKER_ABLATION_H_
#define SPEECHVEIL_SPEAKER_ABLATION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "speechveil/speaker/description.h"

namespace speechveil {

struct AblationGrid {
  Attribute varied_attribute = Attribute::kGender;
  std::size_t subcategory = 0;  // index into Vocabulary(varied_attribute)
  std::vector<SpeakerDescription> combos;
  std::size_t utterances_per_combo = 1;

  const std::string& SubcategoryName() const {
    return Vocabulary(varied_attribute)[subcategory];
  }
  std::size_t TotalDescriptions() const {
    return combos.size() * utterances_per_combo;
  }
};

// Combo i samples every attribute from DeriveSeed(seed,
// "ablation/<attribute>/<subcategory>/combo/<i>") and then pins the varied
// attribute. Throws ValidationError for a bad subcategory or zero sizes.
AblationGrid BuildAblationGrid(Attribute attribute, std::string_view subcategory,
                               std::size_t n_combos,
                               std::size_t utterances_per_combo,
                               std::uint64_t seed);

struct GridAssignment {
  std::size_t combo_index = 0;
  std::size_t utterance_slot = 0;
  std::string utterance_id;
};

// Draws combos x utterances_per_combo distinct ids from `pool` with a
// seeded partial Fisher-Yates shuffle. The draw depends only on (seed,
// attribute), so every subcategory of one attribute sees the same
// utterances. Throws ConfigError when the pool is too small.
std::vector<GridAssignment> AssignUtterances(
    const AblationGrid& grid, const std::vector<std::string>& pool,
    std::uint64_t seed);

// One JSON object per (combo, slot).
std::string GridToJsonl(const AblationGrid& grid,
                        const std::vector<GridAssignment>& assignments);

}  // namespace speechveil

#endif  // SPEECHVEIL_SPEAKER_ABLATION_H_

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

#include "speechveil/speaker/ablation.h"

#include <utility>

#include <fmt/format.h>

#include "speechveil/core/errors.h"
#include "speechveil/core/random.h"

namespace speechveil {

AblationGrid BuildAblationGrid(Attribute attribute, std::string_view subcategory,
                               std::size_t n_combos,
                               std::size_t utterances_per_combo,
                               std::uint64_t seed) {
  if (n_combos == 0 || utterances_per_combo == 0) {
    throw ValidationError("ablation grid sizes must be at least 1");
  }
  AblationGrid grid;
  grid.varied_attribute = attribute;
  grid.subcategory = ValueIndex(attribute, subcategory);
  grid.utterances_per_combo = utterances_per_combo;
  grid.combos.reserve(n_combos);
  for (std::size_t i = 0; i < n_combos; ++i) {
    const std::string tag = fmt::format("ablation/{}/{}/combo/{}",
                                        ToString(attribute), subcategory, i);
    const std::uint64_t combo_seed = DeriveSeed(seed, tag);
    SpeakerAttributes attributes = SampleRandomAttributes(combo_seed);
    attributes.Set(attribute, grid.subcategory);
    grid.combos.push_back(Describe(
        attributes, fmt::format("{}@{}", tag, HexDigest(seed))));
  }
  return grid;
}

std::vector<GridAssignment> AssignUtterances(
    const AblationGrid& grid, const std::vector<std::string>& pool,
    std::uint64_t seed) {
  const std::size_t needed = grid.TotalDescriptions();
  if (pool.size() < needed) {
    throw ConfigError(fmt::format(
        "ablation over {} needs {} distinct utterances but the pool has {} "
        "(short by {})",
        ToString(grid.varied_attribute), needed, pool.size(),
        needed - pool.size()));
  }
  SplitMix64 rng(DeriveSeed(
      seed, fmt::format("ablation/{}/utterances", ToString(grid.varied_attribute))));
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < needed; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<GridAssignment> out;
  out.reserve(needed);
  for (std::size_t c = 0; c < grid.combos.size(); ++c) {
    for (std::size_t s = 0; s < grid.utterances_per_combo; ++s) {
      out.push_back({c, s, pool[order[c * grid.utterances_per_combo + s]]});
    }
  }
  return out;
}

std::string GridToJsonl(const AblationGrid& grid,
                        const std::vector<GridAssignment>& assignments) {
  std::string out;
  for (const GridAssignment& a : assignments) {
    const SpeakerDescription& d = grid.combos.at(a.combo_index);
    const nlohmann::json record = {
        {"varied_attribute", ToString(grid.varied_attribute)},
        {"subcategory", grid.SubcategoryName()},
        {"combo_index", a.combo_index},
        {"utterance_slot", a.utterance_slot},
        {"utterance_id", a.utterance_id},
        {"attributes", d.attributes.ToJson()},
        {"rendered_text", d.rendered},
        {"seed_trace", d.seed_trace}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace speechveil

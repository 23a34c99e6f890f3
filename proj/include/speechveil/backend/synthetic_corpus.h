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

#ifndef SPEECHVEIL_BACKEND_SYNTHETIC_CORPUS_H_
#define SPEECHVEIL_BACKEND_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>

#include "speechveil/backend/mock_world.h"
#include "speechveil/core/types.h"

namespace speechveil {

struct SyntheticCorpusOptions {
  std::size_t speakers = 5;
  std::size_t utterances_per_speaker = 10;
  std::uint64_t seed = 0;
};

// Template-filled parliamentary sentences with gold entity spans drawn from
// the world's gazetteer. Transcripts are unique under NormalizeKey and
// audio refs are "mock/<speaker>/<id>.wav" table keys.
DatasetManifest GenerateSyntheticCorpus(const SyntheticCorpusOptions& options,
                                        const MockWorldConfig& world);

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_SYNTHETIC_CORPUS_H_

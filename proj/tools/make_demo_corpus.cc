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

// Writes a synthetic manifest whose transcripts and gold entities come from
// the mock world's gazetteer, so every mock backend can serve it.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "speechveil/backend/audio.h"
#include "speechveil/backend/synthetic_corpus.h"
#include "speechveil/core/dataset.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic demo manifest", "make_demo_corpus"};
  std::size_t speakers = 40;
  std::size_t per_speaker = 12;
  std::uint64_t seed = 1;
  std::string out = "data/demo_manifest.jsonl";
  app.add_option("--speakers", speakers, "Number of speakers");
  app.add_option("--per-speaker", per_speaker, "Utterances per speaker");
  app.add_option("--seed", seed, "Corpus seed");
  app.add_option("--out", out, "Output manifest path");
  CLI11_PARSE(app, argc, argv);

  const speechveil::DatasetManifest manifest = speechveil::GenerateSyntheticCorpus(
      {speakers, per_speaker, seed}, speechveil::MockWorldConfig::Default());
  std::ostringstream buffer;
  speechveil::WriteManifest(manifest, buffer);
  speechveil::WriteBinaryFile(out, buffer.str());
  std::cout << "wrote " << manifest.size() << " utterances from "
            << manifest.SpeakerCount() << " speakers to " << out << "\n";
  return 0;
}

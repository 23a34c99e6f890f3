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

#ifndef SPEECHVEIL_BACKEND_AUDIO_H_
#define SPEECHVEIL_BACKEND_AUDIO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace speechveil {

std::string Base64Encode(std::string_view bytes);
// Throws ValidationError on malformed input.
std::string Base64Decode(std::string_view text);

// 16-bit mono PCM. `metadata` travels in a private "svmd" RIFF chunk that
// standard readers skip.
struct WavAudio {
  int sample_rate = 16000;
  std::vector<std::int16_t> samples;
  std::string metadata;

  double DurationSeconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

std::string EncodeWav(const WavAudio& audio);
// Throws ValidationError for anything but 16-bit mono PCM.
WavAudio DecodeWav(std::string_view bytes);

std::string ReadBinaryFile(const std::filesystem::path& path);
// Writes through a temporary file and a rename.
void WriteBinaryFile(const std::filesystem::path& path, std::string_view bytes);

}  // namespace speechveil

#endif  // SPEECHVEIL_BACKEND_AUDIO_H_

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

#ifndef SPEECHVEIL_CORE_RANDOM_H_
#define SPEECHVEIL_CORE_RANDOM_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace speechveil {

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data);
std::string HexDigest(std::uint64_t value);

// SplitMix64 (Steele, Lea & Flood). Chosen because the whole algorithm fits
// in a few lines, so every seeded artifact (descriptions, grids, mock worlds)
// can be reproduced bit-for-bit by an implementation in any language:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();

  // Unbiased integer in [0, bound) by rejection of the low remainder band.
  std::uint64_t Below(std::uint64_t bound);

  // Uniform double in [0, 1) from the top 53 bits.
  double Uniform();

  // Standard normal via Box-Muller; consumes two draws per call.
  double Gaussian();

 private:
  std::uint64_t state_;
};

// Child seed for a named sub-stream: mix(parent ^ fnv1a64(tag)).
std::uint64_t DeriveSeed(std::uint64_t parent, std::string_view tag);

}  // namespace speechveil

#endif  // SPEECHVEIL_CORE_RANDOM_H_

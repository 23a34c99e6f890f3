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

#ifndef SPEECHVEIL_CORE_UTF8_H_
#define SPEECHVEIL_CORE_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

// Character positions throughout the project count Unicode scalar values,
// never bytes. These helpers translate between the two.
namespace speechveil::utf8 {

bool IsValid(std::string_view text);

// Throws ValidationError on malformed input.
std::u32string Decode(std::string_view text);
std::string Encode(std::u32string_view text);

std::size_t Length(std::string_view text);

// Byte offset of scalar value `index`; index == Length(text) is allowed.
std::size_t ByteOffset(std::string_view text, std::size_t index);

// Scalar-value substring [start, end). Throws BoundsError when out of range.
std::string Substr(std::string_view text, std::size_t start, std::size_t end);

inline bool IsContinuationByte(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

}  // namespace speechveil::utf8

#endif  // SPEECHVEIL_CORE_UTF8_H_

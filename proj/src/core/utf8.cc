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

#include "speechveil/core/utf8.h"

#include <fmt/format.h>

#include "speechveil/core/errors.h"

namespace speechveil::utf8 {
namespace {

// Decodes one scalar value starting at text[*pos]; returns false on malformed
// input. Rejects overlong forms, surrogates and values above U+10FFFF.
bool DecodeOne(std::string_view text, std::size_t* pos, char32_t* out) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(*pos);
  std::size_t extra = 0;
  char32_t cp = 0;
  char32_t min_value = 0;
  if (lead < 0x80) {
    *out = lead;
    *pos += 1;
    return true;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min_value = 0x10000;
  } else {
    return false;
  }
  if (*pos + extra >= text.size()) return false;
  for (std::size_t k = 1; k <= extra; ++k) {
    const unsigned char c = byte(*pos + k);
    if ((c & 0xC0) != 0x80) return false;
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return false;
  }
  *out = cp;
  *pos += extra + 1;
  return true;
}

}  // namespace

bool IsValid(std::string_view text) {
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!DecodeOne(text, &pos, &cp)) return false;
  }
  return true;
}

std::u32string Decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!DecodeOne(text, &pos, &cp)) {
      throw ValidationError(fmt::format("malformed UTF-8 at byte {}", pos));
    }
    out.push_back(cp);
  }
  return out;
}

std::string Encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::size_t Length(std::string_view text) {
  std::size_t pos = 0;
  std::size_t count = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!DecodeOne(text, &pos, &cp)) {
      throw ValidationError(fmt::format("malformed UTF-8 at byte {}", pos));
    }
    ++count;
  }
  return count;
}

std::size_t ByteOffset(std::string_view text, std::size_t index) {
  std::size_t pos = 0;
  std::size_t count = 0;
  char32_t cp;
  while (count < index) {
    if (pos >= text.size()) {
      throw BoundsError(fmt::format("character index {} beyond length {}",
                                    index, count));
    }
    if (!DecodeOne(text, &pos, &cp)) {
      throw ValidationError(fmt::format("malformed UTF-8 at byte {}", pos));
    }
    ++count;
  }
  return pos;
}

std::string Substr(std::string_view text, std::size_t start, std::size_t end) {
  if (start > end) {
    throw BoundsError(fmt::format("invalid range [{}, {})", start, end));
  }
  const std::size_t begin_byte = ByteOffset(text, start);
  const std::size_t end_byte =
      begin_byte + ByteOffset(text.substr(begin_byte), end - start);
  return std::string(text.substr(begin_byte, end_byte - begin_byte));
}

}  // namespace speechveil::utf8

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

#include "speechveil/backend/audio.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "speechveil/core/errors.h"

namespace speechveil {
namespace {

void PutU32(std::string* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU16(std::string* out, std::uint16_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>(v >> 8));
}

std::uint32_t GetU32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(b[at + static_cast<std::size_t>(i)]);
  }
  return v;
}

std::uint16_t GetU16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    (static_cast<unsigned char>(b[at + 1]) << 8));
}

}  // namespace

std::string Base64Encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw ValidationError("base64 length is not a multiple of 4");
  }
  std::string out(3 * text.size() / 4, '\0');
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw ValidationError("malformed base64");
  std::size_t size = static_cast<std::size_t>(n);
  // EVP_DecodeBlock keeps the zero bytes produced by padding.
  for (std::size_t i = text.size(); i > 0 && text[i - 1] == '='; --i) --size;
  out.resize(size);
  return out;
}

std::string EncodeWav(const WavAudio& audio) {
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(audio.samples.size() * sizeof(std::int16_t));
  std::string meta = audio.metadata;
  if (meta.size() % 2 == 1) meta.push_back(' ');
  const std::uint32_t meta_chunk = meta.empty() ? 0 : 8 + static_cast<std::uint32_t>(meta.size());

  std::string out;
  out.reserve(44 + meta_chunk + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + meta_chunk + data_bytes);
  out += "WAVE";
  out += "fmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<std::uint32_t>(audio.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(audio.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  if (!meta.empty()) {
    out += "svmd";
    PutU32(&out, static_cast<std::uint32_t>(meta.size()));
    out += meta;
  }
  out += "data";
  PutU32(&out, data_bytes);
  for (std::int16_t s : audio.samples) PutU16(&out, static_cast<std::uint16_t>(s));
  return out;
}

WavAudio DecodeWav(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" ||
      bytes.substr(8, 4) != "WAVE") {
    throw ValidationError("not a RIFF/WAVE file");
  }
  WavAudio audio;
  bool have_format = false;
  bool have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string_view id = bytes.substr(pos, 4);
    const std::size_t size = GetU32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw ValidationError("truncated WAV chunk");
    if (id == "fmt ") {
      if (size < 16 || GetU16(bytes, body) != 1 || GetU16(bytes, body + 2) != 1 ||
          GetU16(bytes, body + 14) != 16) {
        throw ValidationError("only 16-bit mono PCM WAV is supported");
      }
      audio.sample_rate = static_cast<int>(GetU32(bytes, body + 4));
      have_format = true;
    } else if (id == "svmd") {
      audio.metadata = std::string(bytes.substr(body, size));
      while (!audio.metadata.empty() && audio.metadata.back() == ' ') {
        audio.metadata.pop_back();
      }
    } else if (id == "data") {
      audio.samples.resize(size / 2);
      for (std::size_t i = 0; i < audio.samples.size(); ++i) {
        audio.samples[i] = static_cast<std::int16_t>(GetU16(bytes, body + 2 * i));
      }
      have_data = true;
    }
    pos = body + size + (size % 2);
  }
  if (!have_format || !have_data) {
    throw ValidationError("WAV file lacks fmt or data chunk");
  }
  return audio;
}

std::string ReadBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError(fmt::format("cannot read {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteBinaryFile(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(fmt::format("short write to {}", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace speechveil

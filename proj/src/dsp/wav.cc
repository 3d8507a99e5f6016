// Copyright (c) 2026 The vclone Authors
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

#include "dsp/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "common/binary_io.h"
#include "common/error.h"

namespace vclone {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

double DecodeSample(const unsigned char* p, uint16_t format, int bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      float f;
      std::memcpy(&f, p, 4);
      return f;
    }
    double d;
    std::memcpy(&d, p, 8);
    return d;
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
      int16_t v;
      std::memcpy(&v, p, 2);
      return v / 32768.0;
    }
    case 24: {
      int32_t v = (p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v |= ~0xFFFFFF;
      return v / 8388608.0;
    }
    default: {
      int32_t v;
      std::memcpy(&v, p, 4);
      return v / 2147483648.0;
    }
  }
}

}  // namespace

WavData ParseWav(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" ||
      bytes.substr(8, 4) != "WAVE") {
    Fail(ErrorCode::kUnsupportedFormat, "not a RIFF/WAVE file");
  }
  BinaryReader reader(bytes.substr(12), ErrorCode::kUnsupportedFormat);
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
  bool have_fmt = false;
  std::string_view data;
  bool have_data = false;
  while (reader.remaining() >= 8 && !have_data) {
    char id[4];
    reader.GetBytes(id, 4);
    const uint32_t size = reader.Get<uint32_t>();
    const std::string_view chunk_id(id, 4);
    const size_t start = 12 + reader.offset();
    if (chunk_id == "fmt ") {
      if (size < 16) Fail(ErrorCode::kUnsupportedFormat, "short fmt chunk");
      format = reader.Get<uint16_t>();
      channels = reader.Get<uint16_t>();
      sample_rate = reader.Get<uint32_t>();
      reader.Get<uint32_t>();  // byte rate
      reader.Get<uint16_t>();  // block align
      bits = reader.Get<uint16_t>();
      if (format == kFormatExtensible && size >= 40) {
        reader.Get<uint16_t>();  // cb size
        reader.Get<uint16_t>();  // valid bits
        reader.Get<uint32_t>();  // channel mask
        format = reader.Get<uint16_t>();
        std::string skip(14, '\0');
        reader.GetBytes(skip.data(), 14);
        if (size > 40) {
          std::string rest(size - 40, '\0');
          reader.GetBytes(rest.data(), rest.size());
        }
      } else if (size > 16) {
        std::string rest(size - 16, '\0');
        reader.GetBytes(rest.data(), rest.size());
      }
      have_fmt = true;
    } else if (chunk_id == "data") {
      // Tolerate a data size that overruns the file (streamed writers).
      const size_t available = bytes.size() - start;
      data = bytes.substr(start, std::min<size_t>(size, available));
      have_data = true;
    } else {
      if (size > reader.remaining()) break;
      std::string skip(size, '\0');
      reader.GetBytes(skip.data(), size);
    }
    if (!have_data && (size & 1u) && reader.remaining() > 0) reader.Get<uint8_t>();
  }
  if (!have_fmt || !have_data) {
    Fail(ErrorCode::kUnsupportedFormat, "missing fmt or data chunk");
  }
  const bool pcm_ok = format == kFormatPcm &&
                      (bits == 8 || bits == 16 || bits == 24 || bits == 32);
  const bool float_ok = format == kFormatFloat && (bits == 32 || bits == 64);
  if (!(pcm_ok || float_ok) || channels == 0 || sample_rate == 0) {
    Fail(ErrorCode::kUnsupportedFormat,
         "unsupported encoding (format " + std::to_string(format) + ", " +
             std::to_string(bits) + " bits)");
  }

  WavData wav;
  wav.sample_rate = static_cast<int>(sample_rate);
  wav.channels = channels;
  wav.bits_per_sample = bits;
  const size_t frame_bytes = static_cast<size_t>(bits / 8) * channels;
  const size_t frames = data.size() / frame_bytes;
  wav.samples.resize(frames);
  const auto* p = reinterpret_cast<const unsigned char*>(data.data());
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      acc += DecodeSample(p + i * frame_bytes + static_cast<size_t>(c) * (bits / 8),
                          format, bits);
    }
    wav.samples[i] = acc / channels;
  }
  return wav;
}

WavData ReadWav(const std::string& path) { return ParseWav(ReadFileBytes(path)); }

std::string EncodeWav16(std::span<const double> samples, int sample_rate) {
  BinaryWriter w;
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  w.PutBytes("RIFF", 4);
  w.Put<uint32_t>(36 + data_bytes);
  w.PutBytes("WAVE", 4);
  w.PutBytes("fmt ", 4);
  w.Put<uint32_t>(16);
  w.Put<uint16_t>(kFormatPcm);
  w.Put<uint16_t>(1);
  w.Put<uint32_t>(static_cast<uint32_t>(sample_rate));
  w.Put<uint32_t>(static_cast<uint32_t>(sample_rate) * 2);
  w.Put<uint16_t>(2);
  w.Put<uint16_t>(16);
  w.PutBytes("data", 4);
  w.Put<uint32_t>(data_bytes);
  for (double s : samples) {
    // Same scale as the reader so a round trip is off by at most half a step.
    const long q = std::clamp(std::lround(s * 32768.0), -32768L, 32767L);
    w.Put<int16_t>(static_cast<int16_t>(q));
  }
  return std::move(w.buffer());
}

void WriteWav16(const std::string& path, std::span<const double> samples,
                int sample_rate) {
  WriteFileAtomic(path, EncodeWav16(samples, sample_rate));
}

}  // namespace vclone

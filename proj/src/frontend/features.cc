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

#include "frontend/features.h"

#include <filesystem>
#include <fstream>

#include "common/binary_io.h"
#include "common/error.h"
#include "common/hash.h"

namespace vclone {
namespace {

constexpr char kMagic[4] = {'V', 'C', 'F', 'T'};
constexpr size_t kHeaderBytes = 4 + 8 * 4 + 2 * 8;

size_t DtypeSize(FeatureDtype dtype) {
  switch (dtype) {
    case FeatureDtype::kFloat32: return 4;
    case FeatureDtype::kFloat64: return 8;
    case FeatureDtype::kInt32: return 4;
  }
  return 0;
}

FeatureHeader ReadHeader(BinaryReader& r) {
  char magic[4];
  r.GetBytes(magic, 4);
  if (std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
    Fail(ErrorCode::kCorruptCheckpoint, "not a feature file");
  }
  const uint32_t version = r.Get<uint32_t>();
  if (version != kFeatureFormatVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "feature format version " + std::to_string(version) + ", expected " +
             std::to_string(kFeatureFormatVersion) +
             "; rerun `prepare` to rebuild the cache");
  }
  FeatureHeader h;
  const uint32_t kind = r.Get<uint32_t>();
  const uint32_t dtype = r.Get<uint32_t>();
  if (kind < 1 || kind > 3 || dtype < 1 || dtype > 3) {
    Fail(ErrorCode::kCorruptCheckpoint, "bad feature kind or dtype");
  }
  h.kind = static_cast<FeatureKind>(kind);
  h.dtype = static_cast<FeatureDtype>(dtype);
  h.rows = r.Get<uint32_t>();
  h.cols = r.Get<uint32_t>();
  h.hop = r.Get<uint32_t>();
  h.win = r.Get<uint32_t>();
  h.sample_rate = r.Get<uint32_t>();
  h.source_hash = r.Get<uint64_t>();
  h.dsp_hash = r.Get<uint64_t>();
  return h;
}

}  // namespace

const char* FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kMel: return "mel";
    case FeatureKind::kDurations: return "durations";
    case FeatureKind::kWaveform: return "waveform";
  }
  return "unknown";
}

bool LooksLikeFeature(std::string_view bytes) {
  return bytes.size() >= 4 && bytes.substr(0, 4) == std::string_view(kMagic, 4);
}

std::string EncodeFeature(const FeatureHeader& header, const Tensor& values) {
  Require(values.size() == static_cast<size_t>(header.rows) * header.cols,
          ErrorCode::kShapeMismatch, "feature size does not match header");
  BinaryWriter w;
  w.PutBytes(kMagic, 4);
  w.Put<uint32_t>(kFeatureFormatVersion);
  w.Put<uint32_t>(static_cast<uint32_t>(header.kind));
  w.Put<uint32_t>(static_cast<uint32_t>(header.dtype));
  w.Put<uint32_t>(header.rows);
  w.Put<uint32_t>(header.cols);
  w.Put<uint32_t>(header.hop);
  w.Put<uint32_t>(header.win);
  w.Put<uint32_t>(header.sample_rate);
  w.Put<uint64_t>(header.source_hash);
  w.Put<uint64_t>(header.dsp_hash);
  for (double v : values.values()) {
    switch (header.dtype) {
      case FeatureDtype::kFloat32: w.Put<float>(static_cast<float>(v)); break;
      case FeatureDtype::kFloat64: w.Put<double>(v); break;
      case FeatureDtype::kInt32: w.Put<int32_t>(static_cast<int32_t>(v)); break;
    }
  }
  w.Put<uint64_t>(HashBytes(w.buffer()));
  return std::move(w.buffer());
}

Feature DecodeFeature(std::string_view bytes) {
  BinaryReader r(bytes, ErrorCode::kCorruptCheckpoint);
  Feature f;
  f.header = ReadHeader(r);
  const size_t count = static_cast<size_t>(f.header.rows) * f.header.cols;
  const size_t need = count * DtypeSize(f.header.dtype) + 8;
  if (r.remaining() != need) {
    Fail(ErrorCode::kCorruptCheckpoint, "feature payload has wrong length");
  }
  const uint64_t expected = HashBytes(bytes.substr(0, bytes.size() - 8));
  f.values = Tensor::Matrix(static_cast<int>(f.header.rows),
                            static_cast<int>(f.header.cols));
  for (size_t i = 0; i < count; ++i) {
    switch (f.header.dtype) {
      case FeatureDtype::kFloat32: f.values[i] = r.Get<float>(); break;
      case FeatureDtype::kFloat64: f.values[i] = r.Get<double>(); break;
      case FeatureDtype::kInt32: f.values[i] = r.Get<int32_t>(); break;
    }
  }
  if (r.Get<uint64_t>() != expected) {
    Fail(ErrorCode::kCorruptCheckpoint, "feature checksum mismatch");
  }
  return f;
}

void WriteFeature(const std::string& path, const FeatureHeader& header,
                  const Tensor& values) {
  WriteFileAtomic(path, EncodeFeature(header, values));
}

Feature ReadFeature(const std::string& path) {
  return DecodeFeature(ReadFileBytes(path));
}

std::optional<FeatureHeader> PeekFeatureHeader(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string head(kHeaderBytes, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  if (in.gcount() != static_cast<std::streamsize>(head.size())) return std::nullopt;
  try {
    BinaryReader r(head, ErrorCode::kCorruptCheckpoint);
    return ReadHeader(r);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace vclone

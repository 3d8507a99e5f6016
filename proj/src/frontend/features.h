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

#ifndef VCLONE_FRONTEND_FEATURES_H_
#define VCLONE_FRONTEND_FEATURES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "autograd/tensor.h"

namespace vclone {

enum class FeatureKind : uint32_t { kMel = 1, kDurations = 2, kWaveform = 3 };
enum class FeatureDtype : uint32_t { kFloat32 = 1, kFloat64 = 2, kInt32 = 3 };

const char* FeatureKindName(FeatureKind kind);

// Binary layout, little endian:
//   "VCFT" | u32 version | u32 kind | u32 dtype | u32 rows | u32 cols |
//   u32 hop | u32 win | u32 sample_rate | u64 source_hash | u64 dsp_hash |
//   rows * cols values | u64 FNV-1a of everything before it
struct FeatureHeader {
  FeatureKind kind = FeatureKind::kMel;
  FeatureDtype dtype = FeatureDtype::kFloat64;
  uint32_t rows = 0;
  uint32_t cols = 0;
  uint32_t hop = 0;
  uint32_t win = 0;
  uint32_t sample_rate = 0;
  uint64_t source_hash = 0;
  uint64_t dsp_hash = 0;
};

inline constexpr uint32_t kFeatureFormatVersion = 1;

struct Feature {
  FeatureHeader header;
  Tensor values;  // rows x cols, converted to double
};

std::string EncodeFeature(const FeatureHeader& header, const Tensor& values);
// Throws CorruptCheckpoint (the corrupt-artifact category) on any damage.
Feature DecodeFeature(std::string_view bytes);

void WriteFeature(const std::string& path, const FeatureHeader& header,
                  const Tensor& values);
Feature ReadFeature(const std::string& path);
// Header only; nullopt if the file is absent or unreadable.
std::optional<FeatureHeader> PeekFeatureHeader(const std::string& path);

bool LooksLikeFeature(std::string_view bytes);

}  // namespace vclone

#endif  // VCLONE_FRONTEND_FEATURES_H_

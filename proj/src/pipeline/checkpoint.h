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

#ifndef VCLONE_PIPELINE_CHECKPOINT_H_
#define VCLONE_PIPELINE_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autograd/tensor.h"

namespace vclone {

enum class CheckpointKind : uint32_t {
  kDuration = 1,
  kAcoustic = 2,
  kGenerator = 3,
  kDiscriminator = 4,
};

const char* CheckpointKindName(CheckpointKind kind);

inline constexpr uint32_t kCheckpointVersion = 2;

// Serialized model state. `config_json` fully describes the architecture;
// `config_hash` is its digest and guards loads against mismatched configs.
struct Checkpoint {
  CheckpointKind kind = CheckpointKind::kDuration;
  uint32_t version = kCheckpointVersion;
  std::string config_json;
  uint64_t config_hash = 0;
  int64_t step = 0;
  std::vector<std::string> speakers;
  std::vector<std::pair<std::string, Tensor>> tensors;
};

// Layout: "VCKP", u32 version, u32 kind, string config, u64 hash, i64 step,
// speakers, named tensors, u64 checksum over everything before it.
std::string EncodeCheckpoint(const Checkpoint& checkpoint);
// Throws CorruptCheckpoint or VersionMismatch.
Checkpoint DecodeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint);
// Throws MissingCheckpoint when the file is absent.
Checkpoint LoadCheckpoint(const std::string& path);

bool LooksLikeCheckpoint(std::string_view bytes);

// Throws ConfigMismatch when kinds or hashes differ, unless `force`.
void CheckCompatible(const Checkpoint& checkpoint, CheckpointKind kind,
                     uint64_t expected_hash, bool force);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_CHECKPOINT_H_

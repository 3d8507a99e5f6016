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

#include "pipeline/checkpoint.h"

#include <filesystem>

#include "common/binary_io.h"
#include "common/error.h"
#include "common/hash.h"

namespace vclone {

namespace {

constexpr char kMagic[4] = {'V', 'C', 'K', 'P'};
constexpr uint32_t kMaxRank = 8;

}  // namespace

const char* CheckpointKindName(CheckpointKind kind) {
  switch (kind) {
    case CheckpointKind::kDuration:
      return "duration";
    case CheckpointKind::kAcoustic:
      return "acoustic";
    case CheckpointKind::kGenerator:
      return "generator";
    case CheckpointKind::kDiscriminator:
      return "discriminator";
  }
  return "unknown";
}

bool LooksLikeCheckpoint(std::string_view bytes) {
  return bytes.size() >= 4 && bytes.substr(0, 4) == std::string_view(kMagic, 4);
}

std::string EncodeCheckpoint(const Checkpoint& c) {
  BinaryWriter w;
  w.PutBytes(kMagic, 4);
  w.Put<uint32_t>(kCheckpointVersion);
  w.Put<uint32_t>(static_cast<uint32_t>(c.kind));
  w.PutString(c.config_json);
  w.Put<uint64_t>(c.config_hash);
  w.Put<int64_t>(c.step);
  w.Put<uint32_t>(static_cast<uint32_t>(c.speakers.size()));
  for (const auto& s : c.speakers) w.PutString(s);
  w.Put<uint32_t>(static_cast<uint32_t>(c.tensors.size()));
  for (const auto& [name, t] : c.tensors) {
    w.PutString(name);
    w.Put<uint32_t>(static_cast<uint32_t>(t.rank()));
    for (int d : t.shape()) w.Put<int32_t>(d);
    w.PutBytes(t.data(), t.size() * sizeof(double));
  }
  w.Put<uint64_t>(HashBytes(w.buffer()));
  return std::move(w.buffer());
}

Checkpoint DecodeCheckpoint(std::string_view bytes) {
  if (!LooksLikeCheckpoint(bytes)) {
    Fail(ErrorCode::kCorruptCheckpoint, "not a checkpoint file");
  }
  BinaryReader r(bytes, ErrorCode::kCorruptCheckpoint);
  char magic[4];
  r.GetBytes(magic, 4);
  Checkpoint c;
  c.version = r.Get<uint32_t>();
  if (c.version < kCheckpointVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "checkpoint format v" + std::to_string(c.version) +
             " is older than v" + std::to_string(kCheckpointVersion) +
             "; migrate by re-running the stage that produced it "
             "(e.g. `vclone train`) with this build");
  }
  if (c.version > kCheckpointVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "checkpoint format v" + std::to_string(c.version) +
             " is newer than this build (v" +
             std::to_string(kCheckpointVersion) + "); upgrade vclone");
  }
  if (bytes.size() < 16) Fail(ErrorCode::kCorruptCheckpoint, "file truncated");
  uint64_t stored = 0;
  std::memcpy(&stored, bytes.data() + bytes.size() - 8, 8);
  if (HashBytes(bytes.substr(0, bytes.size() - 8)) != stored) {
    Fail(ErrorCode::kCorruptCheckpoint,
         "checksum mismatch (file truncated or damaged)");
  }
  const uint32_t kind = r.Get<uint32_t>();
  if (kind < 1 || kind > 4) Fail(ErrorCode::kCorruptCheckpoint, "bad kind");
  c.kind = static_cast<CheckpointKind>(kind);
  c.config_json = r.GetString();
  c.config_hash = r.Get<uint64_t>();
  c.step = r.Get<int64_t>();
  const uint32_t speakers = r.Get<uint32_t>();
  if (speakers > r.remaining()) {
    Fail(ErrorCode::kCorruptCheckpoint, "speaker count out of range");
  }
  for (uint32_t i = 0; i < speakers; ++i) c.speakers.push_back(r.GetString());
  const uint32_t tensors = r.Get<uint32_t>();
  if (tensors > r.remaining()) {
    Fail(ErrorCode::kCorruptCheckpoint, "tensor count out of range");
  }
  for (uint32_t i = 0; i < tensors; ++i) {
    std::string name = r.GetString();
    const uint32_t rank = r.Get<uint32_t>();
    if (rank == 0 || rank > kMaxRank) {
      Fail(ErrorCode::kCorruptCheckpoint, "bad rank for " + name);
    }
    std::vector<int> shape(rank);
    size_t count = 1;
    for (auto& d : shape) {
      d = r.Get<int32_t>();
      if (d < 0) Fail(ErrorCode::kCorruptCheckpoint, "bad shape for " + name);
      count *= static_cast<size_t>(d);
      if (count * sizeof(double) > r.remaining()) {
        Fail(ErrorCode::kCorruptCheckpoint, "tensor " + name + " truncated");
      }
    }
    Tensor t(shape);
    r.GetBytes(t.data(), count * sizeof(double));
    c.tensors.emplace_back(std::move(name), std::move(t));
  }
  if (r.remaining() != 8) {
    Fail(ErrorCode::kCorruptCheckpoint, "trailing bytes after tensors");
  }
  return c;
}

void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint) {
  WriteFileAtomic(path, EncodeCheckpoint(checkpoint));
}

Checkpoint LoadCheckpoint(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    Fail(ErrorCode::kMissingCheckpoint, "no checkpoint at " + path);
  }
  try {
    return DecodeCheckpoint(ReadFileBytes(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path + ": " + e.detail());
  }
}

void CheckCompatible(const Checkpoint& checkpoint, CheckpointKind kind,
                     uint64_t expected_hash, bool force) {
  Require(checkpoint.kind == kind, ErrorCode::kConfigMismatch,
          std::string("expected a ") + CheckpointKindName(kind) +
              " checkpoint, found " + CheckpointKindName(checkpoint.kind));
  if (!force && checkpoint.config_hash != expected_hash) {
    Fail(ErrorCode::kConfigMismatch,
         std::string(CheckpointKindName(kind)) + " checkpoint config hash " +
             HexDigest(checkpoint.config_hash) + " differs from the current " +
             HexDigest(expected_hash) + "; pass --force to load it anyway");
  }
}

}  // namespace vclone

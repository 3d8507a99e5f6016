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

#include "pipeline/model_io.h"

#include <map>

#include "common/error.h"
#include "common/hash.h"
#include "json.hpp"

namespace vclone {

using nlohmann::json;

namespace {

json ParseConfig(const Checkpoint& c) {
  try {
    return json::parse(c.config_json);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kCorruptCheckpoint,
         std::string("checkpoint config is not JSON: ") + e.what());
  }
}

template <typename T>
T Field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kCorruptCheckpoint,
         std::string("checkpoint config lacks a valid '") + key + "'");
  }
}

void ExpectKind(const Checkpoint& c, CheckpointKind kind) {
  Require(c.kind == kind, ErrorCode::kConfigMismatch,
          std::string("expected a ") + CheckpointKindName(kind) +
              " checkpoint, found " + CheckpointKindName(c.kind));
}

// Construction-time validation failures mean the stored config is bad.
template <typename F>
auto Rebuild(F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kConfigInvalid) throw;
    Fail(ErrorCode::kCorruptCheckpoint, "stored config invalid: " + e.detail());
  }
}

}  // namespace

uint64_t ConfigJsonHash(const std::string& j) { return HashBytes(j); }

std::string DurationConfigJson(const DurationConfig& c,
                               const std::vector<std::string>& phones) {
  json j;
  j["vocab_size"] = c.vocab_size;
  j["embedding_dim"] = c.embedding_dim;
  j["hidden"] = c.hidden;
  j["learning_rate"] = c.learning_rate;
  j["min_frames"] = c.min_frames;
  j["phones"] = phones;
  return j.dump();
}

std::string AcousticConfigJson(const AcousticConfig& c,
                               const std::vector<std::string>& phones) {
  json j;
  j["vocab_size"] = c.vocab_size;
  j["embedding_dim"] = c.embedding_dim;
  j["encoder_channels"] = c.encoder_channels;
  j["encoder_kernel"] = c.encoder_kernel;
  j["encoder_layers"] = c.encoder_layers;
  j["encoder_hidden"] = c.encoder_hidden;
  j["speaker_dim"] = c.speaker_dim;
  j["prenet_dims"] = c.prenet_dims;
  j["prenet_dropout"] = c.prenet_dropout;
  j["decoder_hidden"] = c.decoder_hidden;
  j["postnet_channels"] = c.postnet_channels;
  j["postnet_kernel"] = c.postnet_kernel;
  j["postnet_layers"] = c.postnet_layers;
  j["mel_dim"] = c.mel_dim;
  j["phones"] = phones;
  return j.dump();
}

std::string GeneratorConfigJson(const GeneratorConfig& c) {
  json j;
  j["mel_dim"] = c.mel_dim;
  j["initial_channels"] = c.initial_channels;
  j["upsample_factors"] = c.upsample_factors;
  j["resblock_kernels"] = c.resblock_kernels;
  j["resblock_dilations"] = c.resblock_dilations;
  j["pre_kernel"] = c.pre_kernel;
  j["post_kernel"] = c.post_kernel;
  j["leaky_slope"] = c.leaky_slope;
  j["init_stddev"] = c.init_stddev;
  return j.dump();
}

std::string DiscriminatorConfigJson(const DiscriminatorConfig& c) {
  json j;
  j["periods"] = c.periods;
  j["period_channels"] = c.period_channels;
  j["scales"] = c.scales;
  j["scale_channels"] = c.scale_channels;
  j["leaky_slope"] = c.leaky_slope;
  return j.dump();
}

std::vector<std::pair<std::string, Tensor>> ExportTensors(
    const NamedParams& params) {
  std::vector<std::pair<std::string, Tensor>> out;
  out.reserve(params.size());
  for (const auto& [name, var] : params) out.emplace_back(name, var.value());
  return out;
}

void ImportTensors(const Checkpoint& checkpoint, const NamedParams& params) {
  std::map<std::string, const Tensor*> by_name;
  for (const auto& [name, t] : checkpoint.tensors) by_name[name] = &t;
  Require(by_name.size() == params.size(), ErrorCode::kCorruptCheckpoint,
          "checkpoint holds " + std::to_string(by_name.size()) +
              " tensors, model has " + std::to_string(params.size()));
  for (const auto& [name, var] : params) {
    const auto it = by_name.find(name);
    Require(it != by_name.end(), ErrorCode::kCorruptCheckpoint,
            "checkpoint lacks tensor " + name);
    Require(it->second->shape() == var.value().shape(),
            ErrorCode::kCorruptCheckpoint,
            "tensor " + name + " has shape " +
                ShapeString(it->second->shape()) + ", model expects " +
                ShapeString(var.value().shape()));
    var.mutable_value() = *it->second;
  }
}

Checkpoint MakeCheckpoint(const DurationModel& model,
                          const std::vector<std::string>& phones,
                          int64_t step) {
  Checkpoint c;
  c.kind = CheckpointKind::kDuration;
  c.config_json = DurationConfigJson(model.config(), phones);
  c.config_hash = ConfigJsonHash(c.config_json);
  c.step = step;
  c.tensors = ExportTensors(model.Parameters());
  return c;
}

Checkpoint MakeCheckpoint(const AcousticModel& model,
                          const std::vector<std::string>& phones,
                          int64_t step) {
  Checkpoint c;
  c.kind = CheckpointKind::kAcoustic;
  c.config_json = AcousticConfigJson(model.config(), phones);
  c.config_hash = ConfigJsonHash(c.config_json);
  c.step = step;
  c.speakers = model.speakers();
  c.tensors = ExportTensors(model.Parameters());
  return c;
}

Checkpoint MakeCheckpoint(const Generator& model, int64_t step) {
  Checkpoint c;
  c.kind = CheckpointKind::kGenerator;
  c.config_json = GeneratorConfigJson(model.config());
  c.config_hash = ConfigJsonHash(c.config_json);
  c.step = step;
  c.tensors = ExportTensors(model.Parameters());
  return c;
}

Checkpoint MakeCheckpoint(const Discriminators& model, int64_t step) {
  Checkpoint c;
  c.kind = CheckpointKind::kDiscriminator;
  c.config_json = DiscriminatorConfigJson(model.config());
  c.config_hash = ConfigJsonHash(c.config_json);
  c.step = step;
  c.tensors = ExportTensors(model.Parameters());
  return c;
}

DurationModel RestoreDurationModel(const Checkpoint& checkpoint,
                                   std::vector<std::string>* phones) {
  ExpectKind(checkpoint, CheckpointKind::kDuration);
  const json j = ParseConfig(checkpoint);
  DurationConfig c;
  c.vocab_size = Field<int>(j, "vocab_size");
  c.embedding_dim = Field<int>(j, "embedding_dim");
  c.hidden = Field<int>(j, "hidden");
  c.learning_rate = Field<double>(j, "learning_rate");
  c.min_frames = Field<int>(j, "min_frames");
  if (phones) *phones = Field<std::vector<std::string>>(j, "phones");
  DurationModel model = Rebuild([&] { return DurationModel(c, 0); });
  ImportTensors(checkpoint, model.Parameters());
  return model;
}

AcousticModel RestoreAcousticModel(const Checkpoint& checkpoint,
                                   std::vector<std::string>* phones) {
  ExpectKind(checkpoint, CheckpointKind::kAcoustic);
  Require(!checkpoint.speakers.empty(), ErrorCode::kCorruptCheckpoint,
          "acoustic checkpoint has no speakers");
  const json j = ParseConfig(checkpoint);
  AcousticConfig c;
  c.vocab_size = Field<int>(j, "vocab_size");
  c.embedding_dim = Field<int>(j, "embedding_dim");
  c.encoder_channels = Field<int>(j, "encoder_channels");
  c.encoder_kernel = Field<int>(j, "encoder_kernel");
  c.encoder_layers = Field<int>(j, "encoder_layers");
  c.encoder_hidden = Field<int>(j, "encoder_hidden");
  c.speaker_dim = Field<int>(j, "speaker_dim");
  c.prenet_dims = Field<std::vector<int>>(j, "prenet_dims");
  c.prenet_dropout = Field<double>(j, "prenet_dropout");
  c.decoder_hidden = Field<int>(j, "decoder_hidden");
  c.postnet_channels = Field<int>(j, "postnet_channels");
  c.postnet_kernel = Field<int>(j, "postnet_kernel");
  c.postnet_layers = Field<int>(j, "postnet_layers");
  c.mel_dim = Field<int>(j, "mel_dim");
  c.speaker_count = static_cast<int>(checkpoint.speakers.size());
  if (phones) *phones = Field<std::vector<std::string>>(j, "phones");
  AcousticModel model =
      Rebuild([&] { return AcousticModel(c, 0, checkpoint.speakers); });
  ImportTensors(checkpoint, model.Parameters());
  return model;
}

Generator RestoreGenerator(const Checkpoint& checkpoint) {
  ExpectKind(checkpoint, CheckpointKind::kGenerator);
  const json j = ParseConfig(checkpoint);
  GeneratorConfig c;
  c.mel_dim = Field<int>(j, "mel_dim");
  c.initial_channels = Field<int>(j, "initial_channels");
  c.upsample_factors = Field<std::vector<int>>(j, "upsample_factors");
  c.resblock_kernels = Field<std::vector<int>>(j, "resblock_kernels");
  c.resblock_dilations = Field<std::vector<int>>(j, "resblock_dilations");
  c.pre_kernel = Field<int>(j, "pre_kernel");
  c.post_kernel = Field<int>(j, "post_kernel");
  c.leaky_slope = Field<double>(j, "leaky_slope");
  c.init_stddev = Field<double>(j, "init_stddev");
  Generator model = Rebuild([&] { return Generator(c, 0); });
  ImportTensors(checkpoint, model.Parameters());
  return model;
}

Discriminators RestoreDiscriminators(const Checkpoint& checkpoint) {
  ExpectKind(checkpoint, CheckpointKind::kDiscriminator);
  const json j = ParseConfig(checkpoint);
  DiscriminatorConfig c;
  c.periods = Field<std::vector<int>>(j, "periods");
  c.period_channels = Field<std::vector<int>>(j, "period_channels");
  c.scales = Field<int>(j, "scales");
  c.scale_channels = Field<std::vector<int>>(j, "scale_channels");
  c.leaky_slope = Field<double>(j, "leaky_slope");
  Discriminators model = Rebuild([&] { return Discriminators(c, 0); });
  ImportTensors(checkpoint, model.Parameters());
  return model;
}

}  // namespace vclone

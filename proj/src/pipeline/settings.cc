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

#include "pipeline/settings.h"

#include <filesystem>

#include "common/error.h"
#include "common/hash.h"

namespace vclone {

namespace fs = std::filesystem;

std::string PipelineSettings::Stage1Dir() const {
  return (fs::path(out_dir) / "stage1").string();
}
std::string PipelineSettings::Stage2Dir() const {
  return (fs::path(out_dir) / "stage2").string();
}
std::string PipelineSettings::Stage3Dir() const {
  return (fs::path(out_dir) / "stage3").string();
}
std::string PipelineSettings::PreparedDir(const std::string& name) const {
  return (fs::path(out_dir) / "prepared" / name).string();
}

namespace {

void ReadAcousticTrain(const Config& c, const std::string& section,
                       AcousticTrainOptions* o) {
  o->steps = c.GetInt(section + ".acoustic_steps", o->steps);
  o->batch_size =
      static_cast<int>(c.GetInt(section + ".acoustic_batch", o->batch_size));
  o->learning_rate = c.GetDouble(section + ".acoustic_lr", o->learning_rate);
  o->final_lr_ratio =
      c.GetDouble(section + ".acoustic_final_lr_ratio", o->final_lr_ratio);
  o->grad_clip = c.GetDouble(section + ".acoustic_grad_clip", o->grad_clip);
  Require(o->steps >= 0, ErrorCode::kConfigInvalid,
          section + ".acoustic_steps must be >= 0");
}

void ReadVocoderTrain(const Config& c, const std::string& section,
                      VocoderTrainOptions* o) {
  o->segment_frames = static_cast<int>(
      c.GetInt(section + ".vocoder_segment_frames", o->segment_frames));
  o->batch_size =
      static_cast<int>(c.GetInt(section + ".vocoder_batch", o->batch_size));
  o->learning_rate = c.GetDouble(section + ".vocoder_lr", o->learning_rate);
  o->final_lr_ratio =
      c.GetDouble(section + ".vocoder_final_lr_ratio", o->final_lr_ratio);
  o->beta1 = c.GetDouble(section + ".vocoder_beta1", o->beta1);
  o->beta2 = c.GetDouble(section + ".vocoder_beta2", o->beta2);
  o->feature_weight =
      c.GetDouble(section + ".vocoder_feature_weight", o->feature_weight);
  o->mel_weight = c.GetDouble(section + ".vocoder_mel_weight", o->mel_weight);
}

}  // namespace

PipelineSettings ResolveSettings(const Config& c) {
  PipelineSettings s;
  s.corpus = c.GetString("paths.corpus", "");
  s.target_corpus = c.GetString("paths.target_corpus", "");
  s.lexicon = c.GetString("paths.lexicon", "");
  s.out_dir = c.GetString("paths.out_dir", "vclone_out");

  auto& audio = s.frontend.audio;
  audio.loudness = ParseLoudnessMode(c.GetString("data.loudness", "peak"));
  audio.peak_target = c.GetDouble("data.peak_target", audio.peak_target);
  audio.rms_target = c.GetDouble("data.rms_target", audio.rms_target);
  Require(audio.peak_target > 0 && audio.peak_target <= 1 &&
              audio.rms_target > 0 && audio.rms_target <= 1,
          ErrorCode::kConfigInvalid, "loudness targets must be in (0, 1]");
  const std::string policy = c.GetString("data.speaker_policy", "high_only");
  Require(policy == "high_only" || policy == "all", ErrorCode::kConfigInvalid,
          "data.speaker_policy must be high_only or all");
  s.high_quality_only = policy == "high_only";
  s.add_boundary_silence =
      c.GetBool("data.add_boundary_silence", s.add_boundary_silence);

  s.seed = static_cast<uint64_t>(c.GetInt("train.seed", 1234));
  auto& dt = s.duration_train;
  dt.max_epochs =
      static_cast<int>(c.GetInt("train.duration_epochs", dt.max_epochs));
  dt.batch_size =
      static_cast<int>(c.GetInt("train.duration_batch", dt.batch_size));
  dt.holdout_fraction =
      c.GetDouble("train.duration_holdout", dt.holdout_fraction);
  dt.patience =
      static_cast<int>(c.GetInt("train.duration_patience", dt.patience));
  dt.seed = s.seed;
  s.acoustic_train.steps = 3000;
  s.acoustic_train.batch_size = 2;
  s.acoustic_train.final_lr_ratio = 0.05;
  ReadAcousticTrain(c, "train", &s.acoustic_train);
  s.acoustic_train.seed = s.seed + 1;
  s.vocoder_steps = c.GetInt("train.vocoder_steps", s.vocoder_steps);
  ReadVocoderTrain(c, "train", &s.vocoder_train);
  s.vocoder_train.seed = s.seed + 2;

  s.target_speaker = c.GetString("adapt.speaker", "");
  s.acoustic_adapt.steps = 3000;
  s.acoustic_adapt.batch_size = 1;
  s.acoustic_adapt.learning_rate = 5e-4;
  s.acoustic_adapt.final_lr_ratio = 0.1;
  ReadAcousticTrain(c, "adapt", &s.acoustic_adapt);
  s.acoustic_adapt.seed = s.seed + 3;
  s.vocoder_adapt_steps = c.GetInt("adapt.vocoder_steps", 3000);
  ReadVocoderTrain(c, "adapt", &s.vocoder_adapt);
  s.vocoder_adapt.seed = s.seed + 4;
  Require(s.vocoder_steps >= 0 && s.vocoder_adapt_steps >= 0,
          ErrorCode::kConfigInvalid, "vocoder step counts must be >= 0");

  s.synth_speaker = c.GetString("synth.speaker", "");
  s.prenet_dropout_at_synthesis =
      c.GetBool("synth.prenet_dropout", s.prenet_dropout_at_synthesis);
  s.synthesis_seed = static_cast<uint64_t>(c.GetInt("synth.seed", 7));
  s.allow_stage1_baseline =
      c.GetBool("synth.allow_stage1_baseline", s.allow_stage1_baseline);
  s.force = c.GetBool("checkpoint.force", false);

  auto& d = s.duration;
  d.embedding_dim =
      static_cast<int>(c.GetInt("duration.embedding_dim", 32));
  d.hidden = static_cast<int>(c.GetInt("duration.hidden", 32));
  d.learning_rate = c.GetDouble("duration.learning_rate", 1e-3);
  d.min_frames = static_cast<int>(c.GetInt("duration.min_frames", 1));

  auto& a = s.acoustic;
  a.embedding_dim = static_cast<int>(c.GetInt("acoustic.embedding_dim", a.embedding_dim));
  a.encoder_channels = static_cast<int>(c.GetInt("acoustic.encoder_channels", a.encoder_channels));
  a.encoder_kernel = static_cast<int>(c.GetInt("acoustic.encoder_kernel", a.encoder_kernel));
  a.encoder_layers = static_cast<int>(c.GetInt("acoustic.encoder_layers", a.encoder_layers));
  a.encoder_hidden = static_cast<int>(c.GetInt("acoustic.encoder_hidden", a.encoder_hidden));
  a.speaker_dim = static_cast<int>(c.GetInt("acoustic.speaker_dim", a.speaker_dim));
  a.prenet_dims = c.GetIntList("acoustic.prenet_dims", a.prenet_dims);
  a.prenet_dropout = c.GetDouble("acoustic.prenet_dropout", a.prenet_dropout);
  a.decoder_hidden = static_cast<int>(c.GetInt("acoustic.decoder_hidden", a.decoder_hidden));
  a.postnet_channels = static_cast<int>(c.GetInt("acoustic.postnet_channels", a.postnet_channels));
  a.postnet_kernel = static_cast<int>(c.GetInt("acoustic.postnet_kernel", a.postnet_kernel));
  a.postnet_layers = static_cast<int>(c.GetInt("acoustic.postnet_layers", a.postnet_layers));

  auto& g = s.generator;
  g.initial_channels = static_cast<int>(c.GetInt("vocoder.initial_channels", g.initial_channels));
  g.upsample_factors = c.GetIntList("vocoder.upsample_factors", g.upsample_factors);
  g.resblock_kernels = c.GetIntList("vocoder.resblock_kernels", g.resblock_kernels);
  g.resblock_dilations = c.GetIntList("vocoder.resblock_dilations", g.resblock_dilations);
  g.Validate(s.frontend.mel.hop);
  auto& dc = s.discriminator;
  dc.periods = c.GetIntList("vocoder.periods", dc.periods);
  dc.period_channels = c.GetIntList("vocoder.period_channels", dc.period_channels);
  dc.scales = static_cast<int>(c.GetInt("vocoder.scales", dc.scales));
  dc.scale_channels = c.GetIntList("vocoder.scale_channels", dc.scale_channels);
  dc.Validate();
  return s;
}

uint64_t ConfigHash(const Config& config) {
  // Resolve a fresh copy so the key set does not depend on what the caller
  // happened to read already.
  Config fresh;
  for (const auto& [key, value] : config.values()) fresh.Set(key, value);
  ResolveSettings(fresh);
  Fnv1a h;
  for (const auto& [key, value] : fresh.resolved()) {
    if (key.starts_with("paths.")) continue;  // where, not what
    h.Update(key);
    h.Update("=");
    h.Update(value);
    h.Update("\n");
  }
  return h.Digest();
}

}  // namespace vclone

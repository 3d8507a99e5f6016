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

#ifndef VCLONE_PIPELINE_SETTINGS_H_
#define VCLONE_PIPELINE_SETTINGS_H_

#include <cstdint>
#include <string>

#include "acoustic/acoustic_model.h"
#include "acoustic/acoustic_trainer.h"
#include "duration/duration_model.h"
#include "frontend/corpus.h"
#include "pipeline/config.h"
#include "vocoder/discriminator.h"
#include "vocoder/generator.h"
#include "vocoder/vocoder_trainer.h"

namespace vclone {

// Every knob of the three stages, resolved from a Config with defaults.
// Training defaults are desk-scale choices, not published values.
struct PipelineSettings {
  // [paths]
  std::string corpus;         // stage-1 corpus directory
  std::string target_corpus;  // target speaker corpus directory
  std::string lexicon;
  std::string out_dir;

  // [data]
  FrontendOptions frontend;
  bool high_quality_only = true;
  bool add_boundary_silence = true;

  // [train]
  uint64_t seed = 1234;
  DurationTrainOptions duration_train;
  AcousticTrainOptions acoustic_train;
  int64_t vocoder_steps = 2000;
  VocoderTrainOptions vocoder_train;

  // [adapt]
  std::string target_speaker;  // empty: the only speaker of target_corpus
  AcousticTrainOptions acoustic_adapt;
  int64_t vocoder_adapt_steps = 3000;
  VocoderTrainOptions vocoder_adapt;

  // [synth]
  std::string synth_speaker;  // empty: the adaptation target
  bool prenet_dropout_at_synthesis = true;
  uint64_t synthesis_seed = 7;
  bool allow_stage1_baseline = false;

  // [checkpoint]
  bool force = false;

  DurationConfig duration;
  AcousticConfig acoustic;
  GeneratorConfig generator;
  DiscriminatorConfig discriminator;

  std::string Stage1Dir() const;
  std::string Stage2Dir() const;
  std::string Stage3Dir() const;
  std::string PreparedDir(const std::string& name) const;
};

PipelineSettings ResolveSettings(const Config& config);

// Digest of every key=value line ResolveSettings reads, defaults included,
// in sorted order. File locations (paths.*) and keys outside the settings
// (log.every) do not count.
uint64_t ConfigHash(const Config& config);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_SETTINGS_H_

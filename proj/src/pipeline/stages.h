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

#ifndef VCLONE_PIPELINE_STAGES_H_
#define VCLONE_PIPELINE_STAGES_H_

#include <functional>
#include <string>
#include <vector>

#include "frontend/corpus.h"
#include "pipeline/config.h"
#include "pipeline/run_record.h"

namespace vclone {

// Receives one key=value progress line at a time.
using LogFn = std::function<void(const std::string& line)>;

// Artifact names inside a stage directory.
inline constexpr const char* kDurationCheckpoint = "duration.ckpt";
inline constexpr const char* kAcousticCheckpoint = "acoustic.ckpt";
inline constexpr const char* kGeneratorCheckpoint = "generator.ckpt";
inline constexpr const char* kDiscriminatorCheckpoint = "discriminator.ckpt";
inline constexpr const char* kRunRecordFile = "run_record.json";

// Manifest and feature cache for `corpus_dir` under `out_dir`. The lexicon
// path and loudness settings come from `config`.
PrepareSummary RunPrepare(const std::string& corpus_dir,
                          const std::string& out_dir, const Config& config,
                          const LogFn& log = {});

// Multi-speaker training of the duration model, acoustic model and
// vocoder into <out_dir>/stage1.
RunRecord RunTrainStage(const Config& config, const LogFn& log = {});

// Target-speaker fine-tuning of the acoustic model, then of the vocoder on
// (ground-truth waveform, adapted teacher-forced mel) pairs, into
// <out_dir>/stage2. Stage-1 files are only read.
RunRecord RunAdaptStage(const Config& config, const LogFn& log = {});

// One WAV per text into <out_dir>/stage3, in order. Per-text failures are
// listed in the record and do not stop the batch.
RunRecord RunSynthStage(const Config& config,
                        const std::vector<std::string>& texts,
                        const LogFn& log = {});

}  // namespace vclone

#endif  // VCLONE_PIPELINE_STAGES_H_

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

#ifndef VCLONE_ACOUSTIC_ACOUSTIC_TRAINER_H_
#define VCLONE_ACOUSTIC_ACOUSTIC_TRAINER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "acoustic/acoustic_model.h"

namespace vclone {

struct AcousticExample {
  std::vector<int> phone_ids;
  std::vector<int> durations;
  int speaker = 0;
  Tensor mel;  // T x 80
};

struct AcousticTrainOptions {
  int64_t steps = 1000;
  int batch_size = 4;
  double learning_rate = 1e-3;
  // Exponential decay reaching learning_rate * final_lr_ratio at the end.
  double final_lr_ratio = 1.0;
  double grad_clip = 1.0;
  uint64_t seed = 1;
  int log_every = 50;
};

struct AcousticTrainReport {
  int64_t steps = 0;
  double initial_loss = 0.0;  // evaluated before the first update
  double final_loss = 0.0;    // evaluated after the last update
  std::vector<double> curve;  // mean batch loss per log_every window
};

using AcousticProgressFn = std::function<void(int64_t step, double loss)>;

// Per-band mean over every frame of every example (1 x 80).
Tensor MeanFrame(const std::vector<AcousticExample>& examples);

// Frame-weighted teacher-forced loss over the examples, with prenet dropout
// drawn from a fixed seed so repeated calls agree.
double EvaluateAcousticLoss(const AcousticModel& model,
                            const std::vector<AcousticExample>& examples,
                            uint64_t seed = 0);

// Exactly `options.steps` Adam updates on random batches.
AcousticTrainReport TrainAcoustic(AcousticModel* model,
                                  const std::vector<AcousticExample>& examples,
                                  const AcousticTrainOptions& options,
                                  const AcousticProgressFn& progress = {});

// Fine-tunes a copy of `base` on one speaker's examples. The speaker gets a
// new table row unless the table already has it; the examples' speaker
// field is overwritten. With zero steps the copy equals `base` exactly and
// no row is added. Throws EmptyTargetCorpus.
AcousticModel AdaptAcoustic(const AcousticModel& base,
                            std::vector<AcousticExample> examples,
                            const std::string& speaker,
                            const AcousticTrainOptions& options,
                            AcousticTrainReport* report = nullptr,
                            const AcousticProgressFn& progress = {});

}  // namespace vclone

#endif  // VCLONE_ACOUSTIC_ACOUSTIC_TRAINER_H_

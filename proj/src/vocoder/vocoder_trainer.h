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

#ifndef VCLONE_VOCODER_VOCODER_TRAINER_H_
#define VCLONE_VOCODER_VOCODER_TRAINER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dsp/mel.h"
#include "nn/adam.h"
#include "vocoder/discriminator.h"
#include "vocoder/generator.h"

namespace vclone {

// Generator input mel and the waveform it should produce. The waveform
// holds exactly mel.rows() * hop samples.
struct VocoderPair {
  Tensor mel;
  std::vector<double> wave;
};

struct VocoderTrainOptions {
  int segment_frames = 32;
  int batch_size = 1;
  double learning_rate = 2e-4;
  // Exponential decay reaching learning_rate * final_lr_ratio on the last
  // step of TrainVocoder/AdaptVocoder; 1 keeps the rate constant.
  double final_lr_ratio = 1.0;
  double beta1 = 0.8;
  double beta2 = 0.99;
  double feature_weight = 2.0;
  double mel_weight = 45.0;
  uint64_t seed = 1;
};

struct VocoderLosses {
  double discriminator = 0.0;
  double adversarial = 0.0;
  double feature_matching = 0.0;
  double mel = 0.0;  // unweighted L1
  double real_score = 0.0;  // mean critic output on real audio
  double fake_score = 0.0;  // and on generated audio
};

// Throws MisalignedPair.
void CheckPair(const VocoderPair& pair, int hop);

// Mean absolute log-mel difference between generated and real audio of
// every pair, over whole utterances.
double EvaluateMelError(const Generator& generator,
                        const std::vector<VocoderPair>& pairs,
                        const MelConfig& mel_config = {});

// Holds optimiser state for a generator and its critics; both are updated
// in place.
class VocoderTrainer {
 public:
  VocoderTrainer(Generator* generator, Discriminators* discriminators,
                 const VocoderTrainOptions& options,
                 const MelConfig& mel_config = {});

  // One critic update followed by one generator update on a random batch of
  // segments.
  VocoderLosses Step(const std::vector<VocoderPair>& pairs);
  int64_t steps() const { return steps_; }
  // Applies to both optimisers.
  void SetLearningRate(double lr);

 private:
  Generator* generator_;
  Discriminators* discriminators_;
  VocoderTrainOptions options_;
  MelExtractor extractor_;
  NamedParams g_params_;
  NamedParams d_params_;
  Adam g_adam_;
  Adam d_adam_;
  Rng rng_;
  int64_t steps_ = 0;
};

struct VocoderTrainReport {
  int64_t steps = 0;
  double initial_mel_error = 0.0;
  double final_mel_error = 0.0;
  VocoderLosses last;
  std::vector<double> mel_curve;  // per-step L1 mel loss
};

using VocoderProgressFn =
    std::function<void(int64_t step, const VocoderLosses& losses)>;

VocoderTrainReport TrainVocoder(Generator* generator,
                                Discriminators* discriminators,
                                const std::vector<VocoderPair>& pairs,
                                int64_t steps,
                                const VocoderTrainOptions& options,
                                const VocoderProgressFn& progress = {});

struct AdaptedVocoder {
  Generator generator;
  Discriminators discriminators;
  VocoderTrainReport report;
};

// Fine-tunes copies of both networks; the inputs are left untouched.
// Throws EmptyAdaptationSet.
AdaptedVocoder AdaptVocoder(const Generator& generator,
                            const Discriminators& discriminators,
                            const std::vector<VocoderPair>& pairs,
                            int64_t steps, const VocoderTrainOptions& options,
                            const VocoderProgressFn& progress = {});

}  // namespace vclone

#endif  // VCLONE_VOCODER_VOCODER_TRAINER_H_

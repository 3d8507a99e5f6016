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

#ifndef VCLONE_DURATION_DURATION_MODEL_H_
#define VCLONE_DURATION_DURATION_MODEL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nn/layers.h"

namespace vclone {

struct DurationConfig {
  int vocab_size = 0;
  int embedding_dim = 256;
  int hidden = 512;  // per direction
  double learning_rate = 1e-3;
  int min_frames = 1;

  void Validate() const;
};

// Phone embedding -> bidirectional LSTM -> linear, one log-frame count per
// phone. No speaker input.
class DurationModel {
 public:
  DurationModel(const DurationConfig& config, uint64_t seed);

  const DurationConfig& config() const { return config_; }

  // (L x 1) log durations. Empty ids give a (0 x 1) constant.
  Var Forward(std::span<const int> ids) const;
  std::vector<double> ForwardValues(std::span<const int> ids) const;

  NamedParams Parameters() const;
  DurationModel Clone() const;

 private:
  DurationConfig config_;
  EmbeddingTable embedding_;
  BiLstmLayer lstm_;
  LinearLayer projection_;
};

// mean((predicted - log(target))^2). predicted is (L x 1).
Var DurationLoss(const Var& predicted, std::span<const int> target_frames);

// round(exp(x)) clamped to at least `min_frames`.
std::vector<int> LogDurationsToFrames(std::span<const double> log_durations,
                                      int min_frames);
std::vector<int> PredictDurations(const DurationModel& model,
                                  std::span<const int> ids);

struct DurationExample {
  std::vector<int> phone_ids;
  std::vector<int> durations;
};

struct DurationTrainOptions {
  int max_epochs = 200;
  int batch_size = 8;
  double holdout_fraction = 0.1;
  int patience = 10;  // epochs without held-out improvement
  uint64_t seed = 1;
};

struct DurationTrainReport {
  int epochs = 0;
  int64_t steps = 0;
  double initial_loss = 0.0;  // training set, before the first update
  double final_train_loss = 0.0;
  double best_holdout_loss = 0.0;  // equals final_train_loss without holdout
  std::vector<double> train_curve;  // per epoch
};

using ProgressFn = std::function<void(int64_t step, double loss)>;

// Phone-weighted mean loss over a set of examples (no grad).
double EvaluateDurationLoss(const DurationModel& model,
                            const std::vector<DurationExample>& examples);

// Adam with early stopping on a held-out split; the best parameters by
// held-out loss are restored at the end.
DurationTrainReport TrainDurationModel(DurationModel* model,
                                       const std::vector<DurationExample>& data,
                                       const DurationTrainOptions& options,
                                       const ProgressFn& progress = {});

}  // namespace vclone

#endif  // VCLONE_DURATION_DURATION_MODEL_H_

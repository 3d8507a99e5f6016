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

#include "duration/duration_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "common/error.h"
#include "nn/adam.h"

namespace vclone {

void DurationConfig::Validate() const {
  Require(vocab_size > 0 && embedding_dim > 0 && hidden > 0,
          ErrorCode::kConfigInvalid, "duration model dims must be positive");
  Require(min_frames >= 1, ErrorCode::kConfigInvalid, "min_frames must be >= 1");
  Require(learning_rate > 0, ErrorCode::kConfigInvalid,
          "duration learning rate must be positive");
}

DurationModel::DurationModel(const DurationConfig& config, uint64_t seed)
    : config_(config) {
  config_.Validate();
  Rng rng(seed);
  embedding_ = EmbeddingTable(config_.vocab_size, config_.embedding_dim, rng);
  lstm_ = BiLstmLayer(config_.embedding_dim, config_.hidden, rng);
  projection_ = LinearLayer(2 * config_.hidden, 1, rng);
}

Var DurationModel::Forward(std::span<const int> ids) const {
  if (ids.empty()) return Constant(Tensor::Matrix(0, 1));
  return projection_(lstm_(embedding_(ids)));
}

std::vector<double> DurationModel::ForwardValues(
    std::span<const int> ids) const {
  NoGradGuard no_grad;
  const Var out = Forward(ids);
  return out.value().values();
}

NamedParams DurationModel::Parameters() const {
  NamedParams out;
  embedding_.Collect("embedding", &out);
  lstm_.Collect("lstm", &out);
  projection_.Collect("projection", &out);
  return out;
}

DurationModel DurationModel::Clone() const {
  DurationModel copy(config_, 0);
  CopyParameterValues(Parameters(), copy.Parameters());
  return copy;
}

Var DurationLoss(const Var& predicted, std::span<const int> target_frames) {
  Require(predicted.value().rank() == 2 && predicted.cols() == 1,
          ErrorCode::kShapeMismatch, "duration prediction must be (L x 1)");
  Require(predicted.rows() == static_cast<int>(target_frames.size()),
          ErrorCode::kLengthMismatch,
          "duration prediction has " + std::to_string(predicted.rows()) +
              " phones, target has " + std::to_string(target_frames.size()));
  Tensor target = Tensor::Matrix(predicted.rows(), 1);
  for (size_t i = 0; i < target_frames.size(); ++i) {
    Require(target_frames[i] >= 1, ErrorCode::kZeroDuration,
            "target durations must be >= 1 frame");
    target[i] = std::log(static_cast<double>(target_frames[i]));
  }
  if (target_frames.empty()) return Constant(Tensor::Scalar(0.0));
  return MseLoss(predicted, target);
}

std::vector<int> LogDurationsToFrames(std::span<const double> log_durations,
                                      int min_frames) {
  std::vector<int> out;
  out.reserve(log_durations.size());
  for (double x : log_durations) {
    // Cap before exp so absurd outputs cannot overflow int.
    const double frames = std::round(std::exp(std::min(x, 20.0)));
    out.push_back(std::max(min_frames, static_cast<int>(frames)));
  }
  return out;
}

std::vector<int> PredictDurations(const DurationModel& model,
                                  std::span<const int> ids) {
  return LogDurationsToFrames(model.ForwardValues(ids),
                              model.config().min_frames);
}

double EvaluateDurationLoss(const DurationModel& model,
                            const std::vector<DurationExample>& examples) {
  NoGradGuard no_grad;
  double total = 0.0;
  size_t phones = 0;
  for (const auto& ex : examples) {
    const Var loss = DurationLoss(model.Forward(ex.phone_ids), ex.durations);
    total += loss.value().item() * static_cast<double>(ex.phone_ids.size());
    phones += ex.phone_ids.size();
  }
  return phones ? total / static_cast<double>(phones) : 0.0;
}

namespace {

// Accumulates gradients for one batch; each example is weighted by its
// share of the batch's phones, matching a masked mean over a padded batch.
double AccumulateBatch(const DurationModel& model,
                       const std::vector<DurationExample>& data,
                       std::span<const size_t> batch) {
  size_t phones = 0;
  for (size_t i : batch) phones += data[i].phone_ids.size();
  double total = 0.0;
  for (size_t i : batch) {
    const auto& ex = data[i];
    if (ex.phone_ids.empty()) continue;
    const double w =
        static_cast<double>(ex.phone_ids.size()) / static_cast<double>(phones);
    const Var loss =
        Scale(DurationLoss(model.Forward(ex.phone_ids), ex.durations), w);
    total += loss.value().item();
    Backward(loss);
  }
  return total;
}

}  // namespace

DurationTrainReport TrainDurationModel(DurationModel* model,
                                       const std::vector<DurationExample>& data,
                                       const DurationTrainOptions& options,
                                       const ProgressFn& progress) {
  Require(!data.empty(), ErrorCode::kEmptyCorpus,
          "no examples for the duration model");
  for (const auto& ex : data) {
    Require(ex.phone_ids.size() == ex.durations.size(),
            ErrorCode::kLengthMismatch, "phones and durations differ in length");
  }
  Rng rng(options.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<size_t>(rng.UniformInt(
                                static_cast<int>(i)))]);
  }
  size_t holdout = 0;
  if (data.size() >= 2 && options.holdout_fraction > 0) {
    holdout = std::max<size_t>(
        1, static_cast<size_t>(options.holdout_fraction * data.size()));
    holdout = std::min(holdout, data.size() - 1);
  }
  std::vector<DurationExample> train, held;
  for (size_t i = 0; i < order.size(); ++i) {
    (i < holdout ? held : train).push_back(data[order[i]]);
  }

  DurationTrainReport report;
  report.initial_loss = EvaluateDurationLoss(*model, train);
  const NamedParams params = model->Parameters();
  AdamOptions adam_options;
  adam_options.learning_rate = model->config().learning_rate;
  Adam adam(params, adam_options);

  DurationModel best = model->Clone();
  double best_loss = std::numeric_limits<double>::infinity();
  int stale = 0;
  const size_t batch = static_cast<size_t>(std::max(1, options.batch_size));
  std::vector<size_t> idx(train.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    for (size_t i = idx.size(); i > 1; --i) {
      std::swap(idx[i - 1],
                idx[static_cast<size_t>(rng.UniformInt(static_cast<int>(i)))]);
    }
    double epoch_loss = 0.0;
    int batches = 0;
    for (size_t b = 0; b < idx.size(); b += batch) {
      const size_t n = std::min(batch, idx.size() - b);
      adam.ZeroGrad();
      const double loss =
          AccumulateBatch(*model, train, std::span(idx).subspan(b, n));
      ClipGradNorm(params, 1.0);
      adam.Step();
      ++report.steps;
      epoch_loss += loss;
      ++batches;
      if (progress) progress(report.steps, loss);
    }
    report.train_curve.push_back(epoch_loss / std::max(1, batches));
    report.epochs = epoch + 1;
    const double score = held.empty() ? EvaluateDurationLoss(*model, train)
                                      : EvaluateDurationLoss(*model, held);
    if (score < best_loss - 1e-9) {
      best_loss = score;
      CopyParameterValues(params, best.Parameters());
      stale = 0;
    } else if (++stale >= options.patience) {
      break;
    }
  }
  CopyParameterValues(best.Parameters(), params);
  report.best_holdout_loss = best_loss;
  report.final_train_loss = EvaluateDurationLoss(*model, train);
  return report;
}

}  // namespace vclone

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

#include "acoustic/acoustic_trainer.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"
#include "nn/adam.h"

namespace vclone {

namespace {

Var ExampleLoss(const AcousticModel& model, const AcousticExample& ex,
                const DecodeOptions& options) {
  const Var expanded = model.Expand(ex.phone_ids, ex.durations, ex.speaker);
  return AcousticLoss(model.TeacherForced(expanded, ex.mel, options), ex.mel);
}

}  // namespace

Tensor MeanFrame(const std::vector<AcousticExample>& examples) {
  Require(!examples.empty(), ErrorCode::kEmptyCorpus, "no examples");
  const int dim = examples.front().mel.cols();
  Tensor mean = Tensor::Matrix(1, dim);
  double frames = 0.0;
  for (const auto& ex : examples) {
    Require(ex.mel.cols() == dim, ErrorCode::kShapeMismatch,
            "examples differ in mel width");
    mean.AsMatrix() += ex.mel.AsMatrix().colwise().sum();
    frames += ex.mel.rows();
  }
  mean.AsMatrix() /= frames;
  return mean;
}

double EvaluateAcousticLoss(const AcousticModel& model,
                            const std::vector<AcousticExample>& examples,
                            uint64_t seed) {
  NoGradGuard no_grad;
  double total = 0.0;
  double frames = 0.0;
  for (size_t i = 0; i < examples.size(); ++i) {
    DecodeOptions options;
    options.seed = seed + i;
    const double t = examples[i].mel.rows();
    total += t * ExampleLoss(model, examples[i], options).value().item();
    frames += t;
  }
  return frames > 0 ? total / frames : 0.0;
}

AcousticTrainReport TrainAcoustic(AcousticModel* model,
                                  const std::vector<AcousticExample>& examples,
                                  const AcousticTrainOptions& options,
                                  const AcousticProgressFn& progress) {
  Require(!examples.empty(), ErrorCode::kEmptyCorpus,
          "no examples for the acoustic model");
  Require(options.steps >= 0, ErrorCode::kConfigInvalid,
          "step count must be >= 0");
  Require(options.final_lr_ratio > 0 && options.final_lr_ratio <= 1,
          ErrorCode::kConfigInvalid, "final_lr_ratio must be in (0, 1]");
  AcousticTrainReport report;
  report.initial_loss = EvaluateAcousticLoss(*model, examples);
  if (options.steps == 0) {
    report.final_loss = report.initial_loss;
    return report;
  }
  const NamedParams params = model->Parameters();
  AdamOptions adam_options;
  adam_options.learning_rate = options.learning_rate;
  Adam adam(params, adam_options);
  Rng rng(options.seed);
  const int batch = std::max(1, std::min<int>(options.batch_size,
                                              static_cast<int>(examples.size())));
  const int log_every = std::max(1, options.log_every);
  double window = 0.0;
  int window_count = 0;
  const double decay =
      options.steps > 1
          ? std::pow(options.final_lr_ratio, 1.0 / (options.steps - 1))
          : 1.0;
  for (int64_t step = 1; step <= options.steps; ++step) {
    adam.set_learning_rate(options.learning_rate *
                           std::pow(decay, static_cast<double>(step - 1)));
    std::vector<size_t> picks;
    double frames = 0.0;
    for (int b = 0; b < batch; ++b) {
      picks.push_back(static_cast<size_t>(
          rng.UniformInt(static_cast<int>(examples.size()))));
      frames += examples[picks.back()].mel.rows();
    }
    adam.ZeroGrad();
    double batch_loss = 0.0;
    for (size_t i : picks) {
      DecodeOptions decode;
      decode.seed = rng.NextU64();
      // Frame-weighted, as a masked mean over a padded batch would be.
      const Var loss = Scale(ExampleLoss(*model, examples[i], decode),
                             examples[i].mel.rows() / frames);
      batch_loss += loss.value().item();
      Backward(loss);
    }
    if (options.grad_clip > 0) ClipGradNorm(params, options.grad_clip);
    adam.Step();
    ++report.steps;
    window += batch_loss;
    if (++window_count == log_every || step == options.steps) {
      report.curve.push_back(window / window_count);
      window = 0.0;
      window_count = 0;
    }
    if (progress) progress(step, batch_loss);
  }
  report.final_loss = EvaluateAcousticLoss(*model, examples);
  return report;
}

AcousticModel AdaptAcoustic(const AcousticModel& base,
                            std::vector<AcousticExample> examples,
                            const std::string& speaker,
                            const AcousticTrainOptions& options,
                            AcousticTrainReport* report,
                            const AcousticProgressFn& progress) {
  Require(!examples.empty(), ErrorCode::kEmptyTargetCorpus,
          "no utterances for target speaker " + speaker);
  AcousticModel adapted = base.Clone();
  if (options.steps == 0) {
    if (report) *report = AcousticTrainReport{};
    return adapted;
  }
  int index = adapted.SpeakerIndex(speaker);
  if (index < 0) index = adapted.AddSpeaker(speaker);
  for (auto& ex : examples) ex.speaker = index;
  AcousticTrainReport r = TrainAcoustic(&adapted, examples, options, progress);
  if (report) *report = std::move(r);
  return adapted;
}

}  // namespace vclone

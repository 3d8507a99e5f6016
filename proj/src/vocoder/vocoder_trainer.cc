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

#include "vocoder/vocoder_trainer.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"

namespace vclone {

void CheckPair(const VocoderPair& pair, int hop) {
  Require(pair.mel.rank() == 2 && pair.mel.rows() >= 1,
          ErrorCode::kMisalignedPair, "pair mel has no frames");
  const size_t expected = static_cast<size_t>(pair.mel.rows()) * hop;
  Require(pair.wave.size() == expected, ErrorCode::kMisalignedPair,
          "waveform has " + std::to_string(pair.wave.size()) +
              " samples, mel needs " + std::to_string(expected));
}

double EvaluateMelError(const Generator& generator,
                        const std::vector<VocoderPair>& pairs,
                        const MelConfig& mel_config) {
  const MelExtractor extractor(mel_config);
  double total = 0.0;
  size_t count = 0;
  for (const auto& pair : pairs) {
    CheckPair(pair, generator.config().hop());
    const Tensor fake = extractor.Compute(generator.Generate(pair.mel));
    const Tensor real = extractor.Compute(pair.wave);
    for (size_t i = 0; i < fake.size(); ++i) total += std::abs(fake[i] - real[i]);
    count += fake.size();
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

namespace {

AdamOptions VocoderAdam(const VocoderTrainOptions& o) {
  AdamOptions a;
  a.learning_rate = o.learning_rate;
  a.beta1 = o.beta1;
  a.beta2 = o.beta2;
  return a;
}

double MeanValue(const Var& v) {
  const auto& x = v.value().values();
  double s = 0.0;
  for (double e : x) s += e;
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

Var SquaredDistance(const Var& x, double target) {
  Tensor t(x.value().shape(), target);
  return MseLoss(x, t);
}

struct Segment {
  Tensor mel;
  Var wave;  // 1 x 1 x n
};

}  // namespace

VocoderTrainer::VocoderTrainer(Generator* generator,
                               Discriminators* discriminators,
                               const VocoderTrainOptions& options,
                               const MelConfig& mel_config)
    : generator_(generator),
      discriminators_(discriminators),
      options_(options),
      extractor_(mel_config),
      g_params_(generator->Parameters()),
      d_params_(discriminators->Parameters()),
      g_adam_(g_params_, VocoderAdam(options)),
      d_adam_(d_params_, VocoderAdam(options)),
      rng_(options.seed) {
  Require(generator->config().hop() == mel_config.hop,
          ErrorCode::kConfigInvalid, "generator upsampling differs from hop");
  Require(options.segment_frames >= 1 && options.batch_size >= 1,
          ErrorCode::kConfigInvalid, "segment and batch sizes must be >= 1");
  Require(options.final_lr_ratio > 0 && options.final_lr_ratio <= 1,
          ErrorCode::kConfigInvalid, "final_lr_ratio must be in (0, 1]");
}

void VocoderTrainer::SetLearningRate(double lr) {
  g_adam_.set_learning_rate(lr);
  d_adam_.set_learning_rate(lr);
}

VocoderLosses VocoderTrainer::Step(const std::vector<VocoderPair>& pairs) {
  Require(!pairs.empty(), ErrorCode::kEmptyAdaptationSet,
          "no waveform/mel pairs to train on");
  const int hop = generator_->config().hop();
  for (const auto& p : pairs) CheckPair(p, hop);

  std::vector<Segment> batch;
  for (int b = 0; b < options_.batch_size; ++b) {
    const auto& pair =
        pairs[static_cast<size_t>(rng_.UniformInt(static_cast<int>(pairs.size())))];
    const int frames = std::min(options_.segment_frames, pair.mel.rows());
    const int start = rng_.UniformInt(pair.mel.rows() - frames + 1);
    Segment s;
    s.mel = Tensor::Matrix(frames, pair.mel.cols());
    s.mel.AsMatrix() = pair.mel.AsMatrix().middleRows(start, frames);
    const auto first = pair.wave.begin() + static_cast<long>(start) * hop;
    s.wave = Var(Tensor({1, 1, frames * hop},
                        std::vector<double>(first, first + frames * hop)));
    batch.push_back(std::move(s));
  }
  const double w = 1.0 / static_cast<double>(batch.size());
  VocoderLosses losses;

  std::vector<Var> fakes;
  for (const auto& s : batch) fakes.push_back(generator_->Forward(Var(s.mel)));

  // Critic update on detached generator output.
  d_adam_.ZeroGrad();
  for (size_t b = 0; b < batch.size(); ++b) {
    const DiscriminatorOutput real = discriminators_->Forward(batch[b].wave);
    const DiscriminatorOutput fake = discriminators_->Forward(Detach(fakes[b]));
    Var loss;
    for (size_t d = 0; d < real.scores.size(); ++d) {
      const Var term = Add(SquaredDistance(real.scores[d], 1.0),
                           SquaredDistance(fake.scores[d], 0.0));
      loss = loss.defined() ? Add(loss, term) : term;
    }
    loss = Scale(loss, w);
    losses.discriminator += loss.value().item();
    Backward(loss);
  }
  d_adam_.Step();

  // Generator update against the refreshed critics.
  g_adam_.ZeroGrad();
  for (size_t b = 0; b < batch.size(); ++b) {
    DiscriminatorOutput real;
    {
      NoGradGuard no_grad;
      real = discriminators_->Forward(batch[b].wave);
    }
    const DiscriminatorOutput fake = discriminators_->Forward(fakes[b]);
    Var adversarial;
    Var matching;
    for (size_t d = 0; d < fake.scores.size(); ++d) {
      const Var adv = SquaredDistance(fake.scores[d], 1.0);
      adversarial = adversarial.defined() ? Add(adversarial, adv) : adv;
      losses.real_score += w * MeanValue(real.scores[d]) / fake.scores.size();
      losses.fake_score += w * MeanValue(fake.scores[d]) / fake.scores.size();
      for (size_t f = 0; f < fake.features[d].size(); ++f) {
        const Var fm = L1Loss(fake.features[d][f], real.features[d][f]);
        matching = matching.defined() ? Add(matching, fm) : fm;
      }
    }
    const Var fake_mel = extractor_.ComputeVar(fakes[b]);
    const Tensor real_mel = extractor_.Compute(batch[b].wave.value().values());
    const Var mel = L1Loss(fake_mel, Constant(real_mel));
    const Var total =
        Scale(Add(Add(adversarial, Scale(matching, options_.feature_weight)),
                  Scale(mel, options_.mel_weight)),
              w);
    losses.adversarial += w * adversarial.value().item();
    losses.feature_matching += w * matching.value().item();
    losses.mel += w * mel.value().item();
    Backward(total);
  }
  g_adam_.Step();
  ++steps_;
  return losses;
}

VocoderTrainReport TrainVocoder(Generator* generator,
                                Discriminators* discriminators,
                                const std::vector<VocoderPair>& pairs,
                                int64_t steps,
                                const VocoderTrainOptions& options,
                                const VocoderProgressFn& progress) {
  Require(!pairs.empty(), ErrorCode::kEmptyAdaptationSet,
          "no waveform/mel pairs to train on");
  Require(steps >= 0, ErrorCode::kConfigInvalid, "step count must be >= 0");
  VocoderTrainReport report;
  report.initial_mel_error = EvaluateMelError(*generator, pairs);
  VocoderTrainer trainer(generator, discriminators, options);
  const double decay =
      steps > 1 ? std::pow(options.final_lr_ratio, 1.0 / (steps - 1)) : 1.0;
  for (int64_t s = 1; s <= steps; ++s) {
    trainer.SetLearningRate(options.learning_rate *
                            std::pow(decay, static_cast<double>(s - 1)));
    report.last = trainer.Step(pairs);
    report.mel_curve.push_back(report.last.mel);
    if (progress) progress(s, report.last);
  }
  report.steps = steps;
  report.final_mel_error =
      steps > 0 ? EvaluateMelError(*generator, pairs) : report.initial_mel_error;
  return report;
}

AdaptedVocoder AdaptVocoder(const Generator& generator,
                            const Discriminators& discriminators,
                            const std::vector<VocoderPair>& pairs,
                            int64_t steps, const VocoderTrainOptions& options,
                            const VocoderProgressFn& progress) {
  Require(!pairs.empty(), ErrorCode::kEmptyAdaptationSet,
          "no waveform/mel pairs for vocoder adaptation");
  AdaptedVocoder out{generator.Clone(), discriminators.Clone(), {}};
  out.report = TrainVocoder(&out.generator, &out.discriminators, pairs, steps,
                            options, progress);
  return out;
}

}  // namespace vclone

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

#include <gtest/gtest.h>

#include <cmath>

#include "common/rng.h"
#include "dsp/mel.h"
#include "dsp/stft.h"
#include "vocoder/discriminator.h"
#include "vocoder/generator.h"
#include "vocoder/griffin_lim.h"
#include "vocoder/vocoder_trainer.h"
#include "test_util.h"

namespace vclone {
namespace {

using testing::CodeOf;

std::vector<double> Sine(double hz, int n, double amp = 0.5) {
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = amp * std::sin(2 * M_PI * hz * i / 22050.0);
  return s;
}

GeneratorConfig SmallGenerator() {
  GeneratorConfig c;
  c.initial_channels = 16;
  c.resblock_kernels = {3};
  c.resblock_dilations = {1, 3};
  return c;
}

DiscriminatorConfig SmallDiscriminators() {
  DiscriminatorConfig c;
  c.periods = {2, 3};
  c.period_channels = {4, 8};
  c.scales = 2;
  c.scale_channels = {4, 8};
  return c;
}

int DominantBin(const std::vector<double>& wave) {
  const auto spec = StftNoPad(wave, StftConfig{});
  std::vector<double> mag(spec.cols(), 0.0);
  for (int t = 0; t < spec.rows(); ++t) {
    for (int k = 0; k < spec.cols(); ++k) mag[k] += std::abs(spec(t, k));
  }
  return static_cast<int>(std::max_element(mag.begin(), mag.end()) - mag.begin());
}

TEST(GriffinLim, SinePeakSurvivesReconstruction) {
  MelExtractor ex;
  const Tensor mel = ex.Compute(Sine(440, 22050));
  const GriffinLimResult r = GriffinLim(mel, 60);
  EXPECT_EQ(r.samples.size(), static_cast<size_t>(mel.rows()) * 256);
  const double expected = 440.0 * 1024 / 22050.0;
  EXPECT_LE(std::abs(DominantBin(r.samples) - expected), 1.0);
}

TEST(GriffinLim, ErrorNeverIncreases) {
  MelExtractor ex;
  std::vector<double> w = Sine(300, 8000);
  const std::vector<double> w2 = Sine(1250, 8000, 0.2);
  for (size_t i = 0; i < w.size(); ++i) w[i] += w2[i];
  const GriffinLimResult r = GriffinLim(ex.Compute(w), 30);
  ASSERT_EQ(r.errors.size(), 31u);
  for (size_t i = 1; i < r.errors.size(); ++i) {
    EXPECT_LE(r.errors[i], r.errors[i - 1] * (1 + 1e-9)) << "iteration " << i;
  }
  EXPECT_LT(r.errors.back(), r.errors.front());
}

TEST(GriffinLim, SilenceStaysQuiet) {
  const Tensor mel = Tensor::Matrix(20, 80, std::log(1e-5));
  const GriffinLimResult r = GriffinLim(mel, 10);
  double energy = 0.0;
  for (double s : r.samples) energy += s * s;
  EXPECT_LT(std::sqrt(energy / r.samples.size()), 1e-3);
  EXPECT_EQ(r.samples.size(), 20u * 256);
}

TEST(Generator, OutputIsFramesTimesHop) {
  const Generator g(SmallGenerator(), 1);
  Rng rng(2);
  for (int t : {1, 2, 5, 32}) {
    const Tensor mel = NormalTensor({t, 80}, 1.0, rng);
    const std::vector<double> wave = g.Generate(mel);
    EXPECT_EQ(wave.size(), static_cast<size_t>(t) * 256);
    for (double s : wave) EXPECT_LE(std::abs(s), 1.0);
  }
  const Tensor mel = NormalTensor({16, 80}, 1.0, rng);
  Tensor doubled = Tensor::Matrix(32, 80);
  for (int r = 0; r < 32; ++r) {
    for (int c = 0; c < 80; ++c) doubled.at(r, c) = mel.at(r % 16, c);
  }
  EXPECT_EQ(g.Generate(doubled).size(), 2 * g.Generate(mel).size());
}

TEST(Generator, ConfigValidation) {
  GeneratorConfig c;
  c.upsample_factors = {8, 8, 2};
  EXPECT_EQ(CodeOf([&] { c.Validate(256); }), ErrorCode::kConfigInvalid);
  c = GeneratorConfig{};
  c.resblock_kernels = {4};
  EXPECT_EQ(CodeOf([&] { c.Validate(256); }), ErrorCode::kConfigInvalid);
}

TEST(Generator, GradientMatchesFiniteDifferences) {
  GeneratorConfig c;
  c.mel_dim = 4;
  c.initial_channels = 4;
  c.upsample_factors = {2, 2};
  c.resblock_kernels = {3};
  c.resblock_dilations = {1};
  c.pre_kernel = 3;
  c.post_kernel = 3;
  c.init_stddev = 0.3;
  const Generator g(c, 3);
  Rng rng(4);
  const Var mel(NormalTensor({3, 4}, 1.0, rng));
  const Tensor w = NormalTensor({1, 1, 12}, 1.0, rng);
  const auto r = testing::CheckGradients(g.Parameters(), [&] {
    return Sum(Mul(g.Forward(mel), Var(w)));
  });
  EXPECT_LT(r.worst_relative, 1e-4) << r.worst_param;
}

TEST(Discriminators, OneScorePerCritic) {
  const Discriminators d(SmallDiscriminators(), 1);
  EXPECT_EQ(d.count(), 4);
  Rng rng(2);
  const DiscriminatorOutput out = d.Forward(Var(NormalTensor({1, 1, 2048}, 0.3, rng)));
  EXPECT_EQ(out.scores.size(), 4u);
  EXPECT_EQ(out.features.size(), 4u);
  DiscriminatorConfig bad = SmallDiscriminators();
  bad.periods = {2, 2};
  EXPECT_EQ(CodeOf([&] { bad.Validate(); }), ErrorCode::kConfigInvalid);
}

TEST(Discriminators, GradientMatchesFiniteDifferences) {
  DiscriminatorConfig c;
  c.periods = {2};
  c.period_channels = {2};
  c.scales = 1;
  c.scale_channels = {2};
  const Discriminators d(c, 5);
  Rng rng(6);
  const Var wave(NormalTensor({1, 1, 40}, 0.5, rng));
  const auto r = testing::CheckGradients(d.Parameters(), [&] {
    const DiscriminatorOutput out = d.Forward(wave);
    Var total = Mean(out.scores[0]);
    for (size_t i = 1; i < out.scores.size(); ++i) {
      total = Add(total, Mean(out.scores[i]));
    }
    return total;
  });
  EXPECT_LT(r.worst_relative, 1e-4) << r.worst_param;
}

VocoderPair SinePair(int frames) {
  MelExtractor ex;
  // One sample short of `frames` hops gives exactly `frames` mel rows; the
  // wave is then zero-padded to the hop contract like prepared utterances.
  std::vector<double> w = Sine(220, frames * 256 - 1);
  const Tensor mel = ex.Compute(w);
  w.resize(static_cast<size_t>(frames) * 256, 0.0);
  return {mel, w};
}

TEST(VocoderTraining, MisalignedPairIsRejected) {
  VocoderPair p = SinePair(20);
  p.wave.pop_back();
  EXPECT_EQ(CodeOf([&] { CheckPair(p, 256); }), ErrorCode::kMisalignedPair);
  Generator g(SmallGenerator(), 1);
  Discriminators d(SmallDiscriminators(), 2);
  VocoderTrainer trainer(&g, &d, VocoderTrainOptions{});
  EXPECT_EQ(CodeOf([&] { trainer.Step({p}); }), ErrorCode::kMisalignedPair);
}

TEST(VocoderTraining, DecayRatioMustBeAFraction) {
  Generator g(SmallGenerator(), 1);
  Discriminators d(SmallDiscriminators(), 2);
  for (double ratio : {0.0, -0.5, 1.5}) {
    VocoderTrainOptions o;
    o.final_lr_ratio = ratio;
    EXPECT_EQ(CodeOf([&] { VocoderTrainer(&g, &d, o); }), ErrorCode::kConfigInvalid)
        << ratio;
  }
  VocoderTrainOptions o;
  o.final_lr_ratio = 0.1;
  o.segment_frames = 8;
  const VocoderTrainReport r = TrainVocoder(&g, &d, {SinePair(8)}, 3, o);
  EXPECT_EQ(r.steps, 3);
}

TEST(VocoderTraining, WhiteNoiseLossesStayFinite) {
  Rng rng(3);
  std::vector<double> w(40 * 256);
  for (double& s : w) s = std::clamp(rng.Normal() * 0.3, -1.0, 1.0);
  MelExtractor ex;
  const VocoderPair p{ex.Compute(w), w};
  ASSERT_EQ(p.mel.rows(), 41);
  VocoderPair aligned{p.mel, w};
  aligned.wave.resize(static_cast<size_t>(p.mel.rows()) * 256, 0.0);
  Generator g(SmallGenerator(), 1);
  Discriminators d(SmallDiscriminators(), 2);
  VocoderTrainOptions o;
  o.segment_frames = 16;
  VocoderTrainer trainer(&g, &d, o);
  for (int i = 0; i < 10; ++i) {
    const VocoderLosses l = trainer.Step({aligned});
    EXPECT_TRUE(std::isfinite(l.discriminator));
    EXPECT_TRUE(std::isfinite(l.adversarial));
    EXPECT_GE(l.feature_matching, 0.0);
    EXPECT_GE(l.mel, 0.0);
    EXPECT_GE(l.discriminator, 0.0);
  }
  EXPECT_EQ(trainer.steps(), 10);
}

TEST(VocoderTraining, CriticsSeparateRealFromGenerated) {
  const VocoderPair p = SinePair(48);
  Generator g(SmallGenerator(), 1);
  Discriminators d(SmallDiscriminators(), 2);
  VocoderTrainOptions o;
  o.segment_frames = 16;
  VocoderTrainer trainer(&g, &d, o);
  const VocoderLosses first = trainer.Step({p});
  VocoderLosses last;
  for (int i = 1; i < 300; ++i) last = trainer.Step({p});
  EXPECT_GT(last.real_score - last.fake_score,
            first.real_score - first.fake_score);
  EXPECT_GT(last.real_score - last.fake_score, 0.2);
}

TEST(VocoderAdaptation, ZeroStepsIsIdentityAndEmptySetIsRejected) {
  const Generator g(SmallGenerator(), 1);
  const Discriminators d(SmallDiscriminators(), 2);
  const AdaptedVocoder same = AdaptVocoder(g, d, {SinePair(20)}, 0, {});
  const NamedParams a = g.Parameters();
  const NamedParams b = same.generator.Parameters();
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].second.value().values(), b[i].second.value().values());
  }
  EXPECT_EQ(CodeOf([&] { AdaptVocoder(g, d, {}, 10, {}); }),
            ErrorCode::kEmptyAdaptationSet);
}

TEST(VocoderAdaptation, MelErrorDecreasesAndInputsStayUntouched) {
  const Generator g(SmallGenerator(), 1);
  const Discriminators d(SmallDiscriminators(), 2);
  const std::vector<double> before = g.Generate(SinePair(8).mel);
  VocoderTrainOptions o;
  o.segment_frames = 16;
  o.learning_rate = 5e-4;
  const AdaptedVocoder a = AdaptVocoder(g, d, {SinePair(40)}, 60, o);
  EXPECT_LT(a.report.final_mel_error, a.report.initial_mel_error);
  EXPECT_EQ(g.Generate(SinePair(8).mel), before);
}

}  // namespace
}  // namespace vclone

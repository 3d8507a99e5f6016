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
#include <complex>

#include "common/rng.h"
#include "dsp/mel.h"
#include "dsp/stft.h"
#include "test_util.h"

namespace vclone {
namespace {

using testing::CodeOf;

std::vector<double> Sine(double hz, int n, double amp = 0.5, double phase = 0.0) {
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    s[i] = amp * std::sin(2 * M_PI * hz * i / 22050.0 + phase);
  }
  return s;
}

// Slaney mel scale written out directly.
double SlaneyMel(double hz) {
  const double f_sp = 200.0 / 3.0;
  if (hz < 1000.0) return hz / f_sp;
  return 1000.0 / f_sp + std::log(hz / 1000.0) / (std::log(6.4) / 27.0);
}

int BandNearest(double hz, int n_mels, double fmin, double fmax) {
  const double lo = SlaneyMel(fmin);
  const double hi = SlaneyMel(fmax);
  const double step = (hi - lo) / (n_mels + 1);
  const double m = SlaneyMel(hz);
  int best = 0;
  for (int b = 0; b < n_mels; ++b) {
    if (std::abs(lo + (b + 1) * step - m) < std::abs(lo + (best + 1) * step - m)) {
      best = b;
    }
  }
  return best;
}

TEST(Mel, OneSecondGivesEightySevenFrames) {
  MelExtractor ex;
  const Tensor mel = ex.Compute(Sine(440, 22050));
  EXPECT_EQ(mel.rows(), 87);
  EXPECT_EQ(mel.cols(), 80);
  EXPECT_EQ(ex.NumFrames(22050), 1 + 22050 / 256);
}

TEST(Mel, SilenceSitsAtLogFloor) {
  MelExtractor ex;
  const Tensor mel = ex.Compute(std::vector<double>(5000, 0.0));
  for (double v : mel.values()) EXPECT_DOUBLE_EQ(v, std::log(1e-5));
}

int ArgmaxBand(const Tensor& mel, int t) {
  int arg = 0;
  for (int b = 1; b < mel.cols(); ++b) {
    if (mel.at(t, b) > mel.at(t, arg)) arg = b;
  }
  return arg;
}

// Starting at a crest keeps the reflected edge frames free of a kink, so
// every frame including the two padded ones must agree.
TEST(Mel, SineArgmaxIsTheBandHoldingItsFrequency) {
  MelExtractor ex;
  const Tensor mel = ex.Compute(Sine(440, 22050, 0.5, M_PI / 2));
  const int expected = BandNearest(440.0, 80, 0.0, 8000.0);
  const auto centers = MelCenterFrequencies(MelConfig{});
  EXPECT_NEAR(centers[expected], 440.0, 25.0);
  for (int t = 0; t < mel.rows(); ++t) {
    EXPECT_EQ(ArgmaxBand(mel, t), expected) << "frame " << t;
  }
}

// A zero-phase start folds into sin(w|n|) under reflect padding, which nulls
// the 440 Hz line in frame 0. Frames whose window sits fully inside the
// signal are unaffected.
TEST(Mel, ZeroPhaseSineInteriorFramesHoldTheBand) {
  MelExtractor ex;
  const Tensor mel = ex.Compute(Sine(440, 22050));
  const int expected = BandNearest(440.0, 80, 0.0, 8000.0);
  const int edge = 1024 / 2 / 256;
  for (int t = edge; t < mel.rows() - edge; ++t) {
    EXPECT_EQ(ArgmaxBand(mel, t), expected) << "frame " << t;
  }
}

TEST(Mel, CenterFrequenciesFollowSlaneyScale) {
  const auto centers = MelCenterFrequencies(MelConfig{});
  ASSERT_EQ(centers.size(), 80u);
  const double step = SlaneyMel(8000.0) / 81.0;
  for (int b = 0; b < 80; ++b) {
    EXPECT_NEAR(SlaneyMel(centers[b]), (b + 1) * step, 1e-9);
  }
}

TEST(Mel, DeterministicAndFinite) {
  Rng rng(2);
  std::vector<double> w(7000);
  for (double& s : w) s = rng.Normal() * 0.1;
  MelExtractor ex;
  const Tensor a = ex.Compute(w);
  const Tensor b = ex.Compute(w);
  EXPECT_EQ(a.values(), b.values());
  for (double v : a.values()) EXPECT_TRUE(std::isfinite(v));
}

TEST(Mel, TooShortAudioIsRejected) {
  MelExtractor ex;
  EXPECT_EQ(CodeOf([&] { ex.Compute(std::vector<double>(100, 0.1)); }),
            ErrorCode::kAudioTooShort);
}

TEST(Mel, DifferentiablePathMatchesPlainPath) {
  Rng rng(4);
  std::vector<double> w(3000);
  for (double& s : w) s = rng.Normal() * 0.2;
  MelExtractor ex;
  const Tensor plain = ex.Compute(w);
  const Var v = ex.ComputeVar(Var(Tensor({1, 1, 3000}, w)));
  ASSERT_EQ(v.value().size(), plain.size());
  for (size_t i = 0; i < plain.size(); ++i) {
    EXPECT_NEAR(v.value()[i], plain[i], 1e-9);
  }
}

TEST(Mel, GradientMatchesFiniteDifferences) {
  MelConfig c;
  c.n_fft = 64;
  c.hop = 16;
  c.n_mels = 6;
  c.fmax = 8000;
  MelExtractor ex(c);
  Rng rng(6);
  std::vector<double> w(100);
  for (double& s : w) s = rng.Normal() * 0.3;
  const Var wave = Var::Parameter(Tensor({1, 1, 100}, w));
  const auto r = testing::CheckGradients(
      {{"wave", wave}}, [&] { return Mean(ex.ComputeVar(wave)); });
  EXPECT_LT(r.worst_relative, 1e-4);
}

TEST(Stft, InverseRecoversInterior) {
  Rng rng(8);
  std::vector<double> w(4096);
  for (double& s : w) s = rng.Normal();
  StftConfig c;
  const auto spec = StftNoPad(w, c);
  const auto back = IstftNoPad(spec, c);
  for (size_t i = 300; i < 3800; ++i) EXPECT_NEAR(back[i], w[i], 1e-9);
}

TEST(Stft, RealFftMatchesDirectDft) {
  const int n = 16;
  RealFft fft(n);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = std::cos(0.3 * i) + 0.1 * i;
  std::vector<std::complex<double>> out(fft.bins());
  fft.Forward(x.data(), out.data());
  for (int k = 0; k < fft.bins(); ++k) {
    std::complex<double> ref = 0;
    for (int i = 0; i < n; ++i) ref += x[i] * std::polar(1.0, -2 * M_PI * k * i / n);
    EXPECT_NEAR(std::abs(out[k] - ref), 0.0, 1e-10);
  }
}

TEST(Stft, ReflectPadMirrorsWithoutEdge) {
  const std::vector<double> x = {1, 2, 3, 4};
  EXPECT_EQ(ReflectPad(x, 2), (std::vector<double>{3, 2, 1, 2, 3, 4, 3, 2}));
}

}  // namespace
}  // namespace vclone

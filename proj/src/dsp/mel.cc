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

#include "dsp/mel.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "common/error.h"
#include "common/hash.h"

namespace vclone {
namespace {

constexpr double kLinearHzPerMel = 200.0 / 3.0;
constexpr double kLogStartHz = 1000.0;
constexpr double kLogStartMel = kLogStartHz / kLinearHzPerMel;
const double kLogStep = std::log(6.4) / 27.0;
// Keeps the magnitude differentiable at zero.
constexpr double kMagnitudeEps = 1e-9;

struct Spectra {
  int frames = 0;
  ComplexMatrix spectrum;  // frames x bins
  RowMatrix magnitude;     // frames x bins
  RowMatrix mel;           // frames x n_mels, before the log
};

}  // namespace

uint64_t MelConfig::Hash() const {
  const std::string canon =
      "sr=" + std::to_string(sample_rate) + ";n_fft=" + std::to_string(n_fft) +
      ";hop=" + std::to_string(hop) + ";n_mels=" + std::to_string(n_mels) +
      ";fmin=" + std::to_string(fmin) + ";fmax=" + std::to_string(fmax) +
      ";floor=" + std::to_string(log_floor) + ";window=hann;center=reflect";
  return HashBytes(canon);
}

double HzToMel(double hz) {
  if (hz < kLogStartHz) return hz / kLinearHzPerMel;
  return kLogStartMel + std::log(hz / kLogStartHz) / kLogStep;
}

double MelToHz(double mel) {
  if (mel < kLogStartMel) return mel * kLinearHzPerMel;
  return kLogStartHz * std::exp(kLogStep * (mel - kLogStartMel));
}

std::vector<double> MelCenterFrequencies(const MelConfig& config) {
  const double lo = HzToMel(config.fmin);
  const double hi = HzToMel(config.fmax);
  std::vector<double> centers(static_cast<size_t>(config.n_mels));
  for (int m = 0; m < config.n_mels; ++m) {
    centers[static_cast<size_t>(m)] =
        MelToHz(lo + (hi - lo) * (m + 1) / (config.n_mels + 1));
  }
  return centers;
}

RowMatrix MelFilterbank(const MelConfig& config) {
  const int bins = config.n_fft / 2 + 1;
  const double lo = HzToMel(config.fmin);
  const double hi = HzToMel(config.fmax);
  std::vector<double> edges(static_cast<size_t>(config.n_mels + 2));
  for (int i = 0; i < config.n_mels + 2; ++i) {
    edges[static_cast<size_t>(i)] =
        MelToHz(lo + (hi - lo) * i / (config.n_mels + 1));
  }
  RowMatrix fb = RowMatrix::Zero(config.n_mels, bins);
  for (int m = 0; m < config.n_mels; ++m) {
    const double left = edges[static_cast<size_t>(m)];
    const double center = edges[static_cast<size_t>(m) + 1];
    const double right = edges[static_cast<size_t>(m) + 2];
    const double norm = 2.0 / (right - left);
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * config.sample_rate / config.n_fft;
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      fb(m, k) = std::max(0.0, std::min(rise, fall)) * norm;
    }
  }
  return fb;
}

MelExtractor::MelExtractor(MelConfig config)
    : config_(config),
      filterbank_(MelFilterbank(config)),
      window_(HannWindow(config.n_fft)),
      fft_(config.n_fft) {
  Require(config.hop > 0 && config.n_mels > 0 && config.fmax > config.fmin,
          ErrorCode::kInvalidArgument, "invalid mel configuration");
}

int MelExtractor::NumFrames(int num_samples) const {
  return 1 + num_samples / config_.hop;
}

namespace {

Spectra Analyze(std::span<const double> wave, const MelConfig& config,
                const RowMatrix& filterbank, const std::vector<double>& window,
                const RealFft& fft) {
  const int pad = config.n_fft / 2;
  const int n = static_cast<int>(wave.size());
  Require(n > pad, ErrorCode::kAudioTooShort,
          "need more than " + std::to_string(pad) + " samples, got " +
              std::to_string(n));
  const std::vector<double> padded = ReflectPad(wave, pad);
  Spectra s;
  s.frames = 1 + n / config.hop;
  const int bins = fft.bins();
  s.spectrum.resize(s.frames, bins);
  s.magnitude.resize(s.frames, bins);
  std::vector<double> buf(static_cast<size_t>(config.n_fft));
  for (int t = 0; t < s.frames; ++t) {
    const double* src = padded.data() + static_cast<size_t>(t) * config.hop;
    for (int i = 0; i < config.n_fft; ++i) buf[i] = src[i] * window[i];
    fft.Forward(buf.data(), s.spectrum.row(t).data());
    for (int k = 0; k < bins; ++k) {
      s.magnitude(t, k) = std::sqrt(std::norm(s.spectrum(t, k)) + kMagnitudeEps);
    }
  }
  s.mel.noalias() = s.magnitude * filterbank.transpose();
  return s;
}

}  // namespace

Tensor MelExtractor::Compute(std::span<const double> wave) const {
  const Spectra s = Analyze(wave, config_, filterbank_, window_, fft_);
  Tensor out = Tensor::Matrix(s.frames, config_.n_mels);
  for (int t = 0; t < s.frames; ++t) {
    for (int m = 0; m < config_.n_mels; ++m) {
      out.at(t, m) = std::log(std::max(s.mel(t, m), config_.log_floor));
    }
  }
  return out;
}

Var MelExtractor::ComputeVar(const Var& wave) const {
  const Tensor& w = wave.value();
  auto spectra = std::make_shared<Spectra>(
      Analyze(std::span<const double>(w.data(), w.size()), config_,
              filterbank_, window_, fft_));
  Tensor out = Tensor::Matrix(spectra->frames, config_.n_mels);
  for (int t = 0; t < spectra->frames; ++t) {
    for (int m = 0; m < config_.n_mels; ++m) {
      out.at(t, m) = std::log(std::max(spectra->mel(t, m), config_.log_floor));
    }
  }
  return MakeResult(std::move(out), {wave}, [this, spectra](Node& self) {
    Tensor* g = GradOf(self, 0);
    if (!g) return;
    const MelConfig& c = config_;
    const int frames = spectra->frames;
    const int bins = fft_.bins();
    const int n = static_cast<int>(g->size());
    const int pad = c.n_fft / 2;

    // d log(max(mel, floor)) / d mel is 1/mel above the floor, 0 below.
    RowMatrix d_mel(frames, c.n_mels);
    for (int t = 0; t < frames; ++t) {
      for (int m = 0; m < c.n_mels; ++m) {
        const double v = spectra->mel(t, m);
        d_mel(t, m) = v > c.log_floor ? self.grad.at(t, m) / v : 0.0;
      }
    }
    const RowMatrix d_mag = d_mel * filterbank_;

    std::vector<double> d_padded(static_cast<size_t>(n + 2 * pad), 0.0);
    std::vector<std::complex<double>> half(static_cast<size_t>(bins));
    std::vector<double> frame(static_cast<size_t>(c.n_fft));
    for (int t = 0; t < frames; ++t) {
      for (int k = 0; k < bins; ++k) {
        const std::complex<double> x = spectra->spectrum(t, k);
        // d|X|/dRe = Re/|X|, d|X|/dIm = Im/|X|. The c2r transform below
        // doubles interior bins, so they are halved here.
        const double scale = d_mag(t, k) / spectra->magnitude(t, k);
        const double weight = (k == 0 || k == bins - 1) ? 1.0 : 0.5;
        half[static_cast<size_t>(k)] = x * (scale * weight);
      }
      fft_.Inverse(half.data(), frame.data());
      double* dst = d_padded.data() + static_cast<size_t>(t) * c.hop;
      for (int i = 0; i < c.n_fft; ++i) dst[i] += frame[i] * window_[i];
    }
    for (int i = 0; i < n + 2 * pad; ++i) {
      int j = i - pad;
      if (j < 0) j = -j;
      if (j >= n) j = 2 * (n - 1) - j;
      (*g)[static_cast<size_t>(j)] += d_padded[static_cast<size_t>(i)];
    }
  });
}

}  // namespace vclone

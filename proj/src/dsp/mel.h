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

#ifndef VCLONE_DSP_MEL_H_
#define VCLONE_DSP_MEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "autograd/tensor.h"
#include "autograd/variable.h"
#include "dsp/stft.h"

namespace vclone {

// Analysis settings. Defaults are the 22.05 kHz / 1024 / 256 / 80-band
// configuration used throughout the pipeline.
struct MelConfig {
  int sample_rate = 22050;
  int n_fft = 1024;
  int hop = 256;
  int n_mels = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
  double log_floor = 1e-5;

  uint64_t Hash() const;
};

// Slaney-style mel scale: linear below 1 kHz, logarithmic above.
double HzToMel(double hz);
double MelToHz(double mel);

// (n_mels x n_fft/2+1) triangular filters with Slaney area normalisation.
RowMatrix MelFilterbank(const MelConfig& config);
// Centre frequency of every band, in Hz.
std::vector<double> MelCenterFrequencies(const MelConfig& config);

// Computes natural-log mel spectrograms from waveforms. The signal is
// reflect-padded by n_fft/2 on both sides, so a waveform of n samples yields
// 1 + n / hop frames.
class MelExtractor {
 public:
  explicit MelExtractor(MelConfig config = {});

  const MelConfig& config() const { return config_; }
  const RowMatrix& filterbank() const { return filterbank_; }
  int NumFrames(int num_samples) const;

  // (frames x n_mels). Throws AudioTooShort when num_samples <= n_fft / 2.
  Tensor Compute(std::span<const double> wave) const;

  // Differentiable variant. `wave` may have any shape; its elements are the
  // samples in order. The extractor must outlive the returned graph.
  Var ComputeVar(const Var& wave) const;

 private:
  MelConfig config_;
  RowMatrix filterbank_;
  std::vector<double> window_;
  RealFft fft_;
};

}  // namespace vclone

#endif  // VCLONE_DSP_MEL_H_

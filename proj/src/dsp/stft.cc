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

#include "dsp/stft.h"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "common/error.h"

namespace vclone {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

PlanPair GetPlans(int size) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  auto it = cache.find(size);
  if (it != cache.end()) return it->second;
  double* real = fftw_alloc_real(static_cast<size_t>(size));
  fftw_complex* cpx = fftw_alloc_complex(static_cast<size_t>(size / 2 + 1));
  PlanPair plans;
  plans.forward = fftw_plan_dft_r2c_1d(size, real, cpx,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.inverse = fftw_plan_dft_c2r_1d(
      size, cpx, real, FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
  fftw_free(real);
  fftw_free(cpx);
  cache.emplace(size, plans);
  return plans;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  Require(size >= 2 && size % 2 == 0, ErrorCode::kInvalidArgument,
          "FFT size must be even");
  const PlanPair plans = GetPlans(size);
  forward_plan_ = plans.forward;
  inverse_plan_ = plans.inverse;
}

void RealFft::Forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_),
                       const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::Inverse(const std::complex<double>* in, double* out) const {
  fftw_execute_dft_c2r(
      static_cast<fftw_plan>(inverse_plan_),
      reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
      out);
}

std::vector<double> HannWindow(int length) {
  std::vector<double> w(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) {
    w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / length);
  }
  return w;
}

ComplexMatrix StftNoPad(std::span<const double> signal,
                        const StftConfig& config) {
  const int n = static_cast<int>(signal.size());
  Require(n >= config.n_fft, ErrorCode::kAudioTooShort,
          "signal shorter than one analysis window");
  const int frames = 1 + (n - config.n_fft) / config.hop;
  const RealFft fft(config.n_fft);
  const std::vector<double> window = HannWindow(config.n_fft);
  ComplexMatrix out(frames, fft.bins());
  std::vector<double> buf(static_cast<size_t>(config.n_fft));
  for (int t = 0; t < frames; ++t) {
    const double* src = signal.data() + static_cast<size_t>(t) * config.hop;
    for (int i = 0; i < config.n_fft; ++i) buf[i] = src[i] * window[i];
    fft.Forward(buf.data(), out.row(t).data());
  }
  return out;
}

std::vector<double> IstftNoPad(const ComplexMatrix& spectrum,
                               const StftConfig& config) {
  const int frames = static_cast<int>(spectrum.rows());
  const int n_fft = config.n_fft;
  const int length = (frames - 1) * config.hop + n_fft;
  const RealFft fft(n_fft);
  const std::vector<double> window = HannWindow(n_fft);
  std::vector<double> out(static_cast<size_t>(length), 0.0);
  std::vector<double> norm(static_cast<size_t>(length), 0.0);
  std::vector<double> buf(static_cast<size_t>(n_fft));
  for (int t = 0; t < frames; ++t) {
    fft.Inverse(spectrum.row(t).data(), buf.data());
    const size_t offset = static_cast<size_t>(t) * config.hop;
    for (int i = 0; i < n_fft; ++i) {
      out[offset + i] += buf[i] / n_fft * window[i];
      norm[offset + i] += window[i] * window[i];
    }
  }
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = norm[i] > 1e-10 ? out[i] / norm[i] : 0.0;
  }
  return out;
}

std::vector<double> ReflectPad(std::span<const double> signal, int pad) {
  const int n = static_cast<int>(signal.size());
  Require(pad < n, ErrorCode::kAudioTooShort,
          "reflect padding of " + std::to_string(pad) +
              " needs more than that many samples");
  std::vector<double> out(static_cast<size_t>(n + 2 * pad));
  for (int i = 0; i < n + 2 * pad; ++i) {
    int j = i - pad;
    if (j < 0) j = -j;
    if (j >= n) j = 2 * (n - 1) - j;
    out[static_cast<size_t>(i)] = signal[static_cast<size_t>(j)];
  }
  return out;
}

}  // namespace vclone

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

#ifndef VCLONE_DSP_STFT_H_
#define VCLONE_DSP_STFT_H_

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace vclone {

using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                    Eigen::Dynamic, Eigen::RowMajor>;

// Real-input FFT of fixed even size backed by FFTW. Plans are shared
// process-wide; Forward/Inverse are safe to call concurrently.
class RealFft {
 public:
  explicit RealFft(int size);

  int size() const { return size_; }
  int bins() const { return size_ / 2 + 1; }

  // in: size reals -> out: bins complex, e^{-i...} convention.
  void Forward(const double* in, std::complex<double>* out) const;
  // in: bins complex (Hermitian half) -> out: size reals, unnormalised.
  void Inverse(const std::complex<double>* in, double* out) const;

 private:
  int size_;
  void* forward_plan_;
  void* inverse_plan_;
};

// Periodic Hann window.
std::vector<double> HannWindow(int length);

struct StftConfig {
  int n_fft = 1024;
  int hop = 256;
};

// Frames start at 0, hop apart, with no padding: frame count is
// 1 + (n - n_fft) / hop. Returns frames x (n_fft / 2 + 1).
ComplexMatrix StftNoPad(std::span<const double> signal, const StftConfig& config);

// Least-squares inverse of StftNoPad: windowed overlap-add divided by the
// summed squared window. Samples with zero window support are set to 0.
std::vector<double> IstftNoPad(const ComplexMatrix& spectrum,
                               const StftConfig& config);

// Mirrors `pad` samples at each end (excluding the edge sample).
std::vector<double> ReflectPad(std::span<const double> signal, int pad);

}  // namespace vclone

#endif  // VCLONE_DSP_STFT_H_

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

#include "vocoder/griffin_lim.h"

#include <Eigen/Dense>
#include <cmath>

#include "common/error.h"

namespace vclone {

namespace {

// Interior bins stand for two conjugate bins of the full spectrum.
double SpectralDistance(const ComplexMatrix& x, const RowMatrix& target) {
  const int bins = static_cast<int>(target.cols());
  double total = 0.0;
  for (int t = 0; t < target.rows(); ++t) {
    for (int k = 0; k < bins; ++k) {
      const double d = std::abs(x(t, k)) - target(t, k);
      total += (k == 0 || k == bins - 1 ? 1.0 : 2.0) * d * d;
    }
  }
  return std::sqrt(total);
}

}  // namespace

RowMatrix MelToMagnitude(const Tensor& mel, const MelConfig& config) {
  Require(mel.rank() == 2 && mel.cols() == config.n_mels,
          ErrorCode::kShapeMismatch,
          "mel must be (T x " + std::to_string(config.n_mels) + ")");
  const RowMatrix fb = MelFilterbank(config);  // n_mels x bins
  const Eigen::MatrixXd pinv =
      Eigen::MatrixXd(fb).completeOrthogonalDecomposition().pseudoInverse();
  RowMatrix energy = mel.AsMatrix().array().exp().matrix();
  RowMatrix mag = energy * pinv.transpose();
  return mag.cwiseMax(0.0);
}

GriffinLimResult GriffinLim(const Tensor& mel, int iterations,
                            const MelConfig& config) {
  Require(iterations >= 0, ErrorCode::kInvalidArgument,
          "iteration count must be >= 0");
  Require(mel.rank() == 2 && mel.rows() >= 1, ErrorCode::kShapeMismatch,
          "mel must have at least one frame");
  for (double v : mel.values()) {
    Require(std::isfinite(v), ErrorCode::kInvalidArgument,
            "mel contains non-finite values");
  }
  const RowMatrix target = MelToMagnitude(mel, config);
  const StftConfig stft{config.n_fft, config.hop};
  const int frames = mel.rows();

  // Work on the centre-padded signal so frame t of the padded STFT is
  // frame t of the mel.
  ComplexMatrix spec = target.cast<std::complex<double>>();
  std::vector<double> x = IstftNoPad(spec, stft);
  GriffinLimResult result;
  ComplexMatrix current = StftNoPad(x, stft);
  result.errors.push_back(SpectralDistance(current, target));
  for (int it = 0; it < iterations; ++it) {
    for (int t = 0; t < frames; ++t) {
      for (int k = 0; k < spec.cols(); ++k) {
        const std::complex<double> c = current(t, k);
        const double m = std::abs(c);
        spec(t, k) = m > 0 ? c * (target(t, k) / m)
                           : std::complex<double>(target(t, k), 0.0);
      }
    }
    x = IstftNoPad(spec, stft);
    current = StftNoPad(x, stft);
    result.errors.push_back(SpectralDistance(current, target));
  }
  const size_t pad = static_cast<size_t>(config.n_fft / 2);
  const size_t length = static_cast<size_t>(frames) * config.hop;
  result.samples.assign(x.begin() + static_cast<long>(pad),
                        x.begin() + static_cast<long>(pad + length));
  return result;
}

}  // namespace vclone

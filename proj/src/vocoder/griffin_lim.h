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

#ifndef VCLONE_VOCODER_GRIFFIN_LIM_H_
#define VCLONE_VOCODER_GRIFFIN_LIM_H_

#include <vector>

#include "autograd/tensor.h"
#include "dsp/mel.h"

namespace vclone {

struct GriffinLimResult {
  std::vector<double> samples;  // exactly T * hop
  // Spectral distance || |STFT(x_i)| - S || after each iteration, i >= 0
  // (entry 0 is the zero-phase starting point).
  std::vector<double> errors;
};

// Linear magnitudes (T x bins) from a log-mel matrix via the non-negative
// clamped pseudo-inverse of the filterbank.
RowMatrix MelToMagnitude(const Tensor& mel, const MelConfig& config);

// Phase reconstruction from a log-mel matrix. Deterministic: zero initial
// phase, fixed iteration count.
GriffinLimResult GriffinLim(const Tensor& mel, int iterations,
                            const MelConfig& config = {});

}  // namespace vclone

#endif  // VCLONE_VOCODER_GRIFFIN_LIM_H_

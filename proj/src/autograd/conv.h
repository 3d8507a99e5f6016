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

#ifndef VCLONE_AUTOGRAD_CONV_H_
#define VCLONE_AUTOGRAD_CONV_H_

#include "autograd/variable.h"

namespace vclone {

// All inputs are (batch x channels x length).

struct Conv1dOptions {
  int stride = 1;
  int padding = 0;  // zeros on both ends
  int dilation = 1;
};

int Conv1dOutputLength(int length, int kernel, const Conv1dOptions& options);

// weight: (out_channels x in_channels x kernel); bias: (out_channels), optional.
Var Conv1d(const Var& x, const Var& weight, const Var& bias,
           const Conv1dOptions& options);

// weight: (in_channels x out_channels x kernel). Output length is
// (length - 1) * stride - 2 * padding + kernel.
Var ConvTranspose1d(const Var& x, const Var& weight, const Var& bias,
                    int stride, int padding);

Var ReflectPad1d(const Var& x, int left, int right);

// Zero padding counted in the average.
Var AvgPool1d(const Var& x, int kernel, int stride, int padding);

// (1 x c x n) -> (period x c x n / period): column j holds samples
// j, j + period, j + 2 * period, ...
Var FoldPeriod(const Var& x, int period);

}  // namespace vclone

#endif  // VCLONE_AUTOGRAD_CONV_H_

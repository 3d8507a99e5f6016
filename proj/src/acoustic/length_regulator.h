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

#ifndef VCLONE_ACOUSTIC_LENGTH_REGULATOR_H_
#define VCLONE_ACOUSTIC_LENGTH_REGULATOR_H_

#include <span>
#include <vector>

#include "autograd/variable.h"

namespace vclone {

// Relative position of each frame inside its phone: j / (d - 1), and 0 for
// single-frame phones. Throws ZeroDuration for counts < 1.
std::vector<double> PositionScalars(std::span<const int> durations);

// (L x E) encoder rows, L durations, (1 x S) speaker row ->
// (sum(durations) x (E + 1 + S)) rows laid out as [features | position |
// speaker].
Var LengthRegulate(const Var& encoded, std::span<const int> durations,
                   const Var& speaker);
Tensor LengthRegulate(const Tensor& encoded, std::span<const int> durations,
                      const Tensor& speaker);

}  // namespace vclone

#endif  // VCLONE_ACOUSTIC_LENGTH_REGULATOR_H_

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

#include "acoustic/length_regulator.h"

#include <string>

#include "autograd/ops.h"
#include "common/error.h"

namespace vclone {

std::vector<double> PositionScalars(std::span<const int> durations) {
  std::vector<double> out;
  for (int d : durations) {
    Require(d >= 1, ErrorCode::kZeroDuration,
            "phone duration " + std::to_string(d) + " is below one frame");
    for (int j = 0; j < d; ++j) {
      out.push_back(d == 1 ? 0.0 : static_cast<double>(j) / (d - 1));
    }
  }
  return out;
}

Var LengthRegulate(const Var& encoded, std::span<const int> durations,
                   const Var& speaker) {
  Require(static_cast<int>(durations.size()) == encoded.rows(),
          ErrorCode::kLengthMismatch,
          std::to_string(durations.size()) + " durations for " +
              std::to_string(encoded.rows()) + " phones");
  Require(speaker.value().rank() == 2 && speaker.rows() == 1,
          ErrorCode::kShapeMismatch, "speaker vector must be (1 x S)");
  std::vector<double> positions = PositionScalars(durations);
  const int frames = static_cast<int>(positions.size());
  Require(frames > 0, ErrorCode::kLengthMismatch, "no phones to expand");
  return ConcatCols({ExpandRows(encoded, durations),
                     Constant(Tensor({frames, 1}, std::move(positions))),
                     RepeatRows(speaker, frames)});
}

Tensor LengthRegulate(const Tensor& encoded, std::span<const int> durations,
                      const Tensor& speaker) {
  NoGradGuard no_grad;
  return LengthRegulate(Var(encoded), durations, Var(speaker)).value();
}

}  // namespace vclone

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

#ifndef VCLONE_DSP_RESAMPLE_H_
#define VCLONE_DSP_RESAMPLE_H_

#include <span>
#include <vector>

namespace vclone {

// Band-limited resampling with a Kaiser-windowed sinc kernel. Output length
// is ceil(n * dst_rate / src_rate).
std::vector<double> Resample(std::span<const double> input, int src_rate,
                             int dst_rate);

}  // namespace vclone

#endif  // VCLONE_DSP_RESAMPLE_H_

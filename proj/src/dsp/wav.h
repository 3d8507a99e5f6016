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

#ifndef VCLONE_DSP_WAV_H_
#define VCLONE_DSP_WAV_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vclone {

struct WavData {
  std::vector<double> samples;  // mono, nominally in [-1, 1]
  int sample_rate = 0;
  int channels = 0;             // channel count in the source file
  int bits_per_sample = 0;
};

// Accepts integer PCM (8/16/24/32-bit) and IEEE float (32/64-bit), including
// WAVE_FORMAT_EXTENSIBLE. Multi-channel input is averaged to mono.
WavData ParseWav(std::string_view bytes);
WavData ReadWav(const std::string& path);

// 16-bit PCM mono; samples are clipped to [-1, 1].
std::string EncodeWav16(std::span<const double> samples, int sample_rate);
void WriteWav16(const std::string& path, std::span<const double> samples,
                int sample_rate);

}  // namespace vclone

#endif  // VCLONE_DSP_WAV_H_

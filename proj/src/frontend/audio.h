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

#ifndef VCLONE_FRONTEND_AUDIO_H_
#define VCLONE_FRONTEND_AUDIO_H_

#include <string>
#include <vector>

#include "dsp/wav.h"

namespace vclone {

struct Waveform {
  std::vector<double> samples;  // within [-1, 1]
  int sample_rate = 22050;

  double seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class LoudnessMode { kPeak, kRms, kNone };

struct AudioOptions {
  int target_sample_rate = 22050;
  LoudnessMode loudness = LoudnessMode::kPeak;
  double peak_target = 0.95;
  double rms_target = 0.1;
};

// Resamples to the target rate and normalises loudness per utterance. RMS
// normalisation is limited so the peak never exceeds 1. All-zero input is
// left as is. Throws EmptyAudio for zero-length input.
Waveform PrepareAudio(const WavData& wav, const AudioOptions& options = {});
// Reads a PCM/float WAV file; throws UnsupportedFormat or EmptyAudio.
Waveform LoadAudio(const std::string& path, const AudioOptions& options = {});

LoudnessMode ParseLoudnessMode(const std::string& name);

}  // namespace vclone

#endif  // VCLONE_FRONTEND_AUDIO_H_

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

#include "frontend/audio.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"
#include "dsp/resample.h"

namespace vclone {

Waveform PrepareAudio(const WavData& wav, const AudioOptions& options) {
  Require(!wav.samples.empty(), ErrorCode::kEmptyAudio, "no samples");
  Waveform out;
  out.sample_rate = options.target_sample_rate;
  out.samples = Resample(wav.samples, wav.sample_rate, options.target_sample_rate);

  double peak = 0.0;
  double energy = 0.0;
  for (double s : out.samples) {
    peak = std::max(peak, std::abs(s));
    energy += s * s;
  }
  if (peak == 0.0) return out;
  double gain = 1.0;
  switch (options.loudness) {
    case LoudnessMode::kPeak:
      gain = options.peak_target / peak;
      break;
    case LoudnessMode::kRms: {
      const double rms = std::sqrt(energy / static_cast<double>(out.samples.size()));
      gain = std::min(options.rms_target / rms, 1.0 / peak);
      break;
    }
    case LoudnessMode::kNone:
      gain = peak > 1.0 ? 1.0 / peak : 1.0;
      break;
  }
  for (double& s : out.samples) s = std::clamp(s * gain, -1.0, 1.0);
  return out;
}

Waveform LoadAudio(const std::string& path, const AudioOptions& options) {
  return PrepareAudio(ReadWav(path), options);
}

LoudnessMode ParseLoudnessMode(const std::string& name) {
  if (name == "peak") return LoudnessMode::kPeak;
  if (name == "rms") return LoudnessMode::kRms;
  if (name == "none") return LoudnessMode::kNone;
  Fail(ErrorCode::kConfigInvalid, "unknown loudness mode '" + name + "'");
}

}  // namespace vclone

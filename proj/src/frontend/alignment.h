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

#ifndef VCLONE_FRONTEND_ALIGNMENT_H_
#define VCLONE_FRONTEND_ALIGNMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "frontend/phones.h"

namespace vclone {

struct AlignmentInterval {
  std::string phone;
  double start = 0.0;  // seconds
  double end = 0.0;

  bool operator==(const AlignmentInterval&) const = default;
};

struct AlignmentTier {
  std::vector<AlignmentInterval> intervals;

  bool operator==(const AlignmentTier&) const = default;
  std::vector<std::string> Phones() const;
};

struct AlignmentParseOptions {
  // When set, every phone must belong to it.
  const PhoneInventory* inventory = nullptr;
  // The first interval must start within one frame period of 0.
  double frame_period = 256.0 / 22050.0;
};

// One interval per line: "start<TAB>end<TAB>phone" (any whitespace is
// accepted as a separator). Throws MalformedAlignment or
// OverlappingIntervals.
AlignmentTier ParseAlignment(std::string_view text,
                             const AlignmentParseOptions& options = {});
AlignmentTier ReadAlignment(const std::string& path,
                            const AlignmentParseOptions& options = {});

// Tab-separated, shortest round-trip decimal with at least four decimals.
std::string SerializeAlignment(const AlignmentTier& tier);

// The last interval must end within one frame period of the audio end.
void CheckAlignmentCoversAudio(const AlignmentTier& tier, double audio_seconds,
                               double frame_period);

// Frame counts per interval summing exactly to `target_frames`, each >= 1.
// Real-valued counts are rounded, floored at one frame, then adjusted one
// frame at a time: deficits go to the phone whose rounded count falls
// furthest below its real count, surpluses come from the phone furthest
// above it. Ties go to the lower index. Throws InfeasibleDurations when
// there are more phones than frames.
std::vector<int> DurationsToFrames(const AlignmentTier& tier, int hop,
                                   int sample_rate, int target_frames);

}  // namespace vclone

#endif  // VCLONE_FRONTEND_ALIGNMENT_H_

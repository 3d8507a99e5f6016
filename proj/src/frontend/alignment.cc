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

#include "frontend/alignment.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "common/binary_io.h"
#include "common/error.h"

namespace vclone {
namespace {

bool ParseDouble(const std::string& s, double* out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end && std::isfinite(*out);
}

std::string FormatSeconds(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of("eE") != std::string::npos) {
    // Tiny values; fixed notation with enough digits still round-trips.
    char fixed[64];
    auto r = std::to_chars(fixed, fixed + sizeof(fixed), v,
                           std::chars_format::fixed);
    s.assign(fixed, r.ptr);
  }
  size_t dot = s.find('.');
  if (dot == std::string::npos) {
    s += ".";
    dot = s.size() - 1;
  }
  while (s.size() - dot - 1 < 4) s += '0';
  return s;
}

}  // namespace

std::vector<std::string> AlignmentTier::Phones() const {
  std::vector<std::string> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) out.push_back(iv.phone);
  return out;
}

AlignmentTier ParseAlignment(std::string_view text,
                             const AlignmentParseOptions& options) {
  AlignmentTier tier;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, phone, extra;
    if (!(fields >> a)) continue;  // blank line
    const std::string where = "line " + std::to_string(line_no);
    if (!(fields >> b >> phone) || (fields >> extra)) {
      Fail(ErrorCode::kMalformedAlignment, where + ": expected start end phone");
    }
    AlignmentInterval iv;
    iv.phone = phone;
    if (!ParseDouble(a, &iv.start) || !ParseDouble(b, &iv.end)) {
      Fail(ErrorCode::kMalformedAlignment, where + ": bad time value");
    }
    if (iv.start < 0.0 || !(iv.start < iv.end)) {
      Fail(ErrorCode::kMalformedAlignment, where + ": need 0 <= start < end");
    }
    if (options.inventory && !options.inventory->Contains(phone)) {
      Fail(ErrorCode::kUnknownPhone, where + ": unknown phone '" + phone + "'");
    }
    if (!tier.intervals.empty()) {
      const AlignmentInterval& prev = tier.intervals.back();
      if (iv.start < prev.start) {
        Fail(ErrorCode::kMalformedAlignment, where + ": intervals not sorted");
      }
      if (iv.start < prev.end - 1e-9) {
        Fail(ErrorCode::kOverlappingIntervals,
             where + ": starts before the previous interval ends");
      }
    }
    tier.intervals.push_back(std::move(iv));
  }
  if (tier.intervals.empty()) {
    Fail(ErrorCode::kMalformedAlignment, "no intervals");
  }
  if (tier.intervals.front().start > options.frame_period + 1e-9) {
    Fail(ErrorCode::kMalformedAlignment,
         "first interval starts more than one frame after 0");
  }
  return tier;
}

AlignmentTier ReadAlignment(const std::string& path,
                            const AlignmentParseOptions& options) {
  return ParseAlignment(ReadFileBytes(path), options);
}

std::string SerializeAlignment(const AlignmentTier& tier) {
  std::string out;
  for (const auto& iv : tier.intervals) {
    out += FormatSeconds(iv.start) + "\t" + FormatSeconds(iv.end) + "\t" +
           iv.phone + "\n";
  }
  return out;
}

void CheckAlignmentCoversAudio(const AlignmentTier& tier, double audio_seconds,
                               double frame_period) {
  Require(!tier.intervals.empty(), ErrorCode::kMalformedAlignment, "no intervals");
  const double end = tier.intervals.back().end;
  Require(std::abs(end - audio_seconds) <= frame_period + 1e-9,
          ErrorCode::kMalformedAlignment,
          "alignment ends at " + std::to_string(end) + " s but audio lasts " +
              std::to_string(audio_seconds) + " s");
}

std::vector<int> DurationsToFrames(const AlignmentTier& tier, int hop,
                                   int sample_rate, int target_frames) {
  const int n = static_cast<int>(tier.intervals.size());
  Require(hop > 0 && sample_rate > 0, ErrorCode::kInvalidArgument,
          "hop and sample rate must be positive");
  if (n > target_frames) {
    Fail(ErrorCode::kInfeasibleDurations,
         std::to_string(n) + " phones cannot each get a frame out of " +
             std::to_string(target_frames));
  }
  std::vector<double> exact(static_cast<size_t>(n));
  std::vector<int> counts(static_cast<size_t>(n));
  int total = 0;
  for (int i = 0; i < n; ++i) {
    const auto& iv = tier.intervals[static_cast<size_t>(i)];
    exact[i] = (iv.end - iv.start) * sample_rate / hop;
    counts[i] = std::max(1, static_cast<int>(std::lround(exact[i])));
    total += counts[i];
  }
  while (total < target_frames) {
    int best = 0;
    for (int i = 1; i < n; ++i) {
      if (exact[i] - counts[i] > exact[best] - counts[best]) best = i;
    }
    ++counts[best];
    ++total;
  }
  while (total > target_frames) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (counts[i] <= 1) continue;
      if (best < 0 || exact[i] - counts[i] < exact[best] - counts[best]) best = i;
    }
    // n <= target_frames guarantees some count exceeds one here.
    --counts[best];
    --total;
  }
  return counts;
}

}  // namespace vclone

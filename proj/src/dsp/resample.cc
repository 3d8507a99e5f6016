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

#include "dsp/resample.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "common/error.h"

namespace vclone {
namespace {

constexpr double kKaiserBeta = 8.6;
constexpr int kZeroCrossings = 24;

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

std::vector<double> Resample(std::span<const double> input, int src_rate,
                             int dst_rate) {
  Require(src_rate > 0 && dst_rate > 0, ErrorCode::kInvalidArgument,
          "sample rates must be positive");
  if (src_rate == dst_rate) return {input.begin(), input.end()};
  const int64_t n = static_cast<int64_t>(input.size());
  const int64_t out_len = (n * dst_rate + src_rate - 1) / src_rate;
  std::vector<double> out(static_cast<size_t>(out_len), 0.0);

  // Cutoff in cycles per input sample, slightly below the lower Nyquist.
  const double ratio = static_cast<double>(dst_rate) / src_rate;
  const double cutoff = 0.5 * std::min(1.0, ratio) * 0.97;
  const double half_width = kZeroCrossings / (2.0 * cutoff);
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);

  auto kernel = [&](double u) {
    const double r = u / half_width;
    if (r <= -1.0 || r >= 1.0) return 0.0;
    const double window =
        std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta;
    return 2.0 * cutoff * Sinc(2.0 * cutoff * u) * window;
  };

  // Output instants repeat their fractional input offset every
  // dst_rate / gcd samples, so taps are tabulated per phase.
  const int64_t g = std::gcd(src_rate, dst_rate);
  const int64_t phases = dst_rate / g;
  const int64_t taps = static_cast<int64_t>(std::ceil(half_width)) * 2 + 2;
  const int64_t first_offset = -static_cast<int64_t>(std::ceil(half_width));
  std::vector<double> table;
  const bool tabulate = phases <= 4096;
  if (tabulate) {
    table.resize(static_cast<size_t>(phases * taps));
    for (int64_t p = 0; p < phases; ++p) {
      const double frac = static_cast<double>(p * (src_rate / g) % phases) /
                          static_cast<double>(phases);
      for (int64_t k = 0; k < taps; ++k) {
        table[static_cast<size_t>(p * taps + k)] =
            kernel(frac - static_cast<double>(first_offset + k));
      }
    }
  }

  for (int64_t j = 0; j < out_len; ++j) {
    const int64_t base = (j * src_rate) / dst_rate;
    const double t = static_cast<double>(j) * src_rate / dst_rate;
    double acc = 0.0;
    for (int64_t k = 0; k < taps; ++k) {
      const int64_t idx = base + first_offset + k;
      if (idx < 0 || idx >= n) continue;
      const double w = tabulate
                           ? table[static_cast<size_t>((j % phases) * taps + k)]
                           : kernel(t - static_cast<double>(idx));
      acc += input[static_cast<size_t>(idx)] * w;
    }
    out[static_cast<size_t>(j)] = acc;
  }
  return out;
}

}  // namespace vclone

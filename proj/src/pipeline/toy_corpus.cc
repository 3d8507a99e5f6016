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

#include "pipeline/toy_corpus.h"

#include <cmath>
#include <filesystem>

#include "common/binary_io.h"
#include "common/error.h"
#include "common/rng.h"
#include "dsp/wav.h"
#include "frontend/alignment.h"

namespace vclone {

namespace fs = std::filesystem;

namespace {

constexpr int kSampleRate = 22050;
constexpr int kHop = 256;

struct ToyPhone {
  char grapheme;
  const char* symbol;
  double f1;
  double f2;
};

constexpr ToyPhone kPhones[] = {
    {'a', "AA", 750, 1200}, {'b', "EH", 550, 1800}, {'c', "IY", 300, 2300},
    {'d', "OW", 450, 850},  {'e', "UW", 320, 800},  {'f', "MM", 250, 1100},
    {'g', "NN", 280, 1600}, {'h', "LL", 380, 1300},
};

const ToyPhone& PhoneFor(char g) {
  for (const auto& p : kPhones) {
    if (p.grapheme == g) return p;
  }
  Fail(ErrorCode::kInvalidArgument, std::string("no toy phone for ") + g);
}

struct Segment {
  std::string symbol;
  const ToyPhone* phone = nullptr;  // null for silence
  int frames = 0;
};

double Formant(double f, double center, double bandwidth) {
  const double x = (f - center) / bandwidth;
  return std::exp(-0.5 * x * x);
}

void Render(const Segment& seg, const ToyVoice& voice, double* phase,
            std::vector<double>* out) {
  const int n = seg.frames * kHop;
  const size_t start = out->size();
  out->resize(start + static_cast<size_t>(n), 0.0);
  if (!seg.phone) return;
  const double f1 = seg.phone->f1 * voice.formant_scale;
  const double f2 = seg.phone->f2 * voice.formant_scale;
  const int harmonics = static_cast<int>(10000.0 / voice.f0);
  std::vector<double> amp(static_cast<size_t>(harmonics) + 1, 0.0);
  for (int h = 1; h <= harmonics; ++h) {
    const double f = h * voice.f0;
    amp[static_cast<size_t>(h)] =
        (Formant(f, f1, 90.0) + 0.6 * Formant(f, f2, 140.0) + 0.02) / h;
  }
  const int ramp = 128;
  for (int i = 0; i < n; ++i) {
    double v = 0.0;
    for (int h = 1; h <= harmonics; ++h) {
      v += amp[static_cast<size_t>(h)] * std::sin(h * *phase);
    }
    double gain = 0.3;
    if (i < ramp) gain *= static_cast<double>(i) / ramp;
    if (n - i < ramp) gain *= static_cast<double>(n - i) / ramp;
    (*out)[start + static_cast<size_t>(i)] = gain * v;
    *phase += 2.0 * M_PI * voice.f0 / kSampleRate;
    if (*phase > 2.0 * M_PI) *phase -= 2.0 * M_PI;
  }
}

std::string FormatSeconds(int frames) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f",
                static_cast<double>(frames) * kHop / kSampleRate);
  return buf;
}

}  // namespace

std::string ToyLexiconText() {
  std::string out = "# toy lexicon: grapheme<TAB>phones\n";
  for (const auto& p : kPhones) {
    out += std::string(1, p.grapheme) + "\t" + p.symbol + "\n";
  }
  out += ",\tSP\n.\tSP\n";
  return out;
}

std::string RandomToyText(uint64_t seed, int words) {
  Rng rng(seed);
  std::string text;
  for (int w = 0; w < words; ++w) {
    if (w > 0) text += rng.Uniform() < 0.35 ? ", " : " ";
    const int letters = 2 + rng.UniformInt(3);
    for (int l = 0; l < letters; ++l) {
      text += kPhones[rng.UniformInt(static_cast<int>(std::size(kPhones)))]
                  .grapheme;
    }
  }
  return text;
}

void WriteToyCorpus(const std::string& dir, const ToyCorpusOptions& options) {
  Require(!options.voices.empty(), ErrorCode::kInvalidArgument,
          "toy corpus needs at least one voice");
  Require(options.min_words >= 1 && options.max_words >= options.min_words,
          ErrorCode::kInvalidArgument, "bad toy word counts");
  Rng rng(options.seed);
  for (const auto& voice : options.voices) {
    const fs::path vdir = fs::path(dir) / voice.name;
    fs::create_directories(vdir);
    WriteFileAtomic((vdir / "quality.txt").string(), voice.quality + "\n");
    for (int u = 0; u < options.utterances_per_voice; ++u) {
      const int words =
          options.min_words +
          rng.UniformInt(options.max_words - options.min_words + 1);
      const std::string text = RandomToyText(rng.NextU64(), words);
      std::vector<Segment> segs;
      segs.push_back({"SIL", nullptr, 6 + rng.UniformInt(4)});
      for (char ch : text) {
        if (ch == ' ') continue;
        if (ch == ',') {
          segs.push_back({"SP", nullptr, 4 + rng.UniformInt(3)});
          continue;
        }
        const ToyPhone& p = PhoneFor(ch);
        segs.push_back({p.symbol, &p, 5 + rng.UniformInt(8)});
      }
      segs.push_back({"SIL", nullptr, 6 + rng.UniformInt(4)});

      std::vector<double> samples;
      double phase = 0.0;
      AlignmentTier tier;
      int frame = 0;
      for (const auto& s : segs) {
        Render(s, voice, &phase, &samples);
        tier.intervals.push_back({s.symbol,
                                  std::stod(FormatSeconds(frame)),
                                  std::stod(FormatSeconds(frame + s.frames))});
        frame += s.frames;
      }
      for (double& v : samples) v += options.noise_floor * rng.Normal();
      char stem[32];
      std::snprintf(stem, sizeof(stem), "utt%03d", u);
      WriteWav16((vdir / (std::string(stem) + ".wav")).string(), samples,
                 kSampleRate);
      WriteFileAtomic((vdir / (std::string(stem) + ".txt")).string(),
                      text + "\n");
      WriteFileAtomic((vdir / (std::string(stem) + ".align")).string(),
                      SerializeAlignment(tier));
    }
  }
}

}  // namespace vclone

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

#ifndef VCLONE_PIPELINE_TOY_CORPUS_H_
#define VCLONE_PIPELINE_TOY_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace vclone {

// A synthetic voice: harmonic source at `f0` shaped by per-phone formants
// scaled by `formant_scale`.
struct ToyVoice {
  std::string name;
  double f0 = 140.0;
  double formant_scale = 1.0;
  std::string quality = "high";
};

struct ToyCorpusOptions {
  std::vector<ToyVoice> voices;
  int utterances_per_voice = 20;
  int min_words = 2;
  int max_words = 3;
  uint64_t seed = 1;
  double noise_floor = 1e-4;
};

// Graphemes a..h each map to one phone; ',' and '.' map to SP.
std::string ToyLexiconText();

// Writes <dir>/<voice>/<stem>.wav|.txt|.align (+ quality.txt) with exact
// alignments whose boundaries fall on frame multiples.
void WriteToyCorpus(const std::string& dir, const ToyCorpusOptions& options);

// Random text in the toy alphabet.
std::string RandomToyText(uint64_t seed, int words);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_TOY_CORPUS_H_

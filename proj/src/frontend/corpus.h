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

#ifndef VCLONE_FRONTEND_CORPUS_H_
#define VCLONE_FRONTEND_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "autograd/tensor.h"
#include "dsp/mel.h"
#include "frontend/audio.h"
#include "frontend/lexicon.h"
#include "frontend/manifest.h"

namespace vclone {

struct FrontendOptions {
  AudioOptions audio;
  MelConfig mel;

  uint64_t Hash() const;
};

// One (phones, durations, mel, waveform) training example.
struct TrainingUtterance {
  std::string id;
  std::string speaker;
  std::vector<int> phone_ids;
  std::vector<int> durations;  // sums to mel.rows()
  Tensor mel;                  // frames x n_mels
  std::vector<double> wave;    // padded or trimmed to frames * hop
};

struct PrepareSummary {
  int kept = 0;
  int skipped = 0;
  int speakers = 0;
  int64_t total_frames = 0;
  int cache_hits = 0;
  int computed = 0;
  std::vector<std::string> skip_reasons;
  std::string manifest_path;
};

// Feature cache paths for one utterance inside `feature_dir`.
std::string MelFeaturePath(const std::string& feature_dir, const std::string& id);
std::string DurationFeaturePath(const std::string& feature_dir, const std::string& id);
std::string WaveFeaturePath(const std::string& feature_dir, const std::string& id);
std::string FeatureDirFor(const std::string& manifest_path);

// Produces the cached features of one record, reusing files whose header
// hashes still match the audio/alignment bytes and the frontend settings.
// Sets *cache_hit accordingly. Propagates frontend errors.
TrainingUtterance EnsureFeatures(const UtteranceRecord& record,
                                 const std::string& feature_dir,
                                 const PhoneInventory& inventory,
                                 const FrontendOptions& options,
                                 bool* cache_hit = nullptr);

// Builds the manifest from a corpus directory, computes every feature into
// <out_dir>/features, and writes <out_dir>/manifest.jsonl + speakers.json.
// Utterances whose audio or alignment cannot be processed are skipped and
// listed. Throws EmptyCorpus if nothing survives.
PrepareSummary PrepareCorpus(const std::string& corpus_dir,
                             const std::string& out_dir, const Lexicon& lexicon,
                             const FrontendOptions& options);

// Loads (computing if needed) every record of a prepared manifest.
std::vector<TrainingUtterance> LoadUtterances(const Manifest& manifest,
                                              const std::string& feature_dir,
                                              const PhoneInventory& inventory,
                                              const FrontendOptions& options);

}  // namespace vclone

#endif  // VCLONE_FRONTEND_CORPUS_H_

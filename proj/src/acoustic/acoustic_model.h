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

#ifndef VCLONE_ACOUSTIC_ACOUSTIC_MODEL_H_
#define VCLONE_ACOUSTIC_ACOUSTIC_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nn/layers.h"

namespace vclone {

struct AcousticConfig {
  int vocab_size = 0;
  int embedding_dim = 64;
  int encoder_channels = 64;
  int encoder_kernel = 5;
  int encoder_layers = 3;
  int encoder_hidden = 32;  // per direction
  int speaker_count = 1;
  int speaker_dim = 16;
  std::vector<int> prenet_dims = {64, 64};
  double prenet_dropout = 0.5;
  int decoder_hidden = 128;
  int postnet_channels = 64;
  int postnet_kernel = 5;
  int postnet_layers = 5;
  int mel_dim = 80;

  int encoder_dim() const { return 2 * encoder_hidden; }
  int expanded_dim() const { return encoder_dim() + 1 + speaker_dim; }
  void Validate() const;
};

struct MelPrediction {
  Var before_postnet;  // T x mel_dim
  Var after_postnet;
};

struct DecodeOptions {
  // Prenet dropout is applied in training and, by default, at synthesis.
  bool prenet_dropout = true;
  uint64_t seed = 0;
};

class AcousticModel {
 public:
  AcousticModel(const AcousticConfig& config, uint64_t seed,
                std::vector<std::string> speakers = {});

  const AcousticConfig& config() const { return config_; }
  const std::vector<std::string>& speakers() const { return speakers_; }
  int SpeakerIndex(const std::string& name) const;  // -1 when absent

  // (L x E)
  Var Encode(std::span<const int> ids) const;
  // (1 x S) row of the speaker table.
  Var SpeakerVector(int index) const;
  // Average of all rows, detached from the table.
  Var MeanSpeakerVector() const;
  // Adds a row initialised to the mean of the existing rows; returns its
  // index. Optimisers built before this call do not see the new table.
  int AddSpeaker(const std::string& name);

  // Ground-truth frame t-1 feeds step t.
  MelPrediction TeacherForced(const Var& expanded, const Tensor& mel_gt,
                              const DecodeOptions& options) const;
  // Feeds back its own frames, or the rows of `forced_feedback` when given.
  MelPrediction Autoregressive(const Var& expanded,
                               const DecodeOptions& options,
                               const Tensor* forced_feedback = nullptr) const;
  Var Postnet(const Var& before) const;

  // Encode + length regulation for one utterance.
  Var Expand(std::span<const int> ids, std::span<const int> durations,
             int speaker_index) const;
  Var Expand(std::span<const int> ids, std::span<const int> durations,
             const Var& speaker) const;

  // Starts the frame projection at a typical frame (e.g. the corpus mean)
  // instead of zero.
  void SetOutputBias(const Tensor& frame);

  NamedParams Parameters() const;
  AcousticModel Clone() const;

 private:
  Var DecoderStep(const Var& prev_frame, const Var& expanded_prev,
                  const Var& expanded_now, LstmState* s1, LstmState* s2,
                  bool dropout, Rng& rng) const;
  MelPrediction Decode(const Var& expanded, const Tensor* feedback,
                       const DecodeOptions& options) const;

  AcousticConfig config_;
  std::vector<std::string> speakers_;
  EmbeddingTable phone_embedding_;
  std::vector<Conv1dLayer> encoder_convs_;
  BiLstmLayer encoder_lstm_;
  EmbeddingTable speaker_table_;
  std::vector<LinearLayer> prenet_;
  LstmLayer decoder_lstm1_;
  LstmLayer decoder_lstm2_;
  LinearLayer frame_projection_;
  std::vector<Conv1dLayer> postnet_;
};

// MSE(before, gt) + MSE(after, gt).
Var AcousticLoss(const MelPrediction& prediction, const Tensor& mel_gt);

}  // namespace vclone

#endif  // VCLONE_ACOUSTIC_ACOUSTIC_MODEL_H_

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

#include "acoustic/acoustic_model.h"

#include "acoustic/length_regulator.h"
#include "common/error.h"

namespace vclone {

void AcousticConfig::Validate() const {
  Require(mel_dim > 0, ErrorCode::kConfigInvalid, "mel_dim must be positive");
  Require(speaker_count >= 1, ErrorCode::kConfigInvalid,
          "speaker_count must be >= 1");
  Require(vocab_size > 0 && embedding_dim > 0 && encoder_channels > 0 &&
              encoder_hidden > 0 && speaker_dim > 0 && decoder_hidden > 0 &&
              postnet_channels > 0 && encoder_layers >= 0 && postnet_layers >= 2,
          ErrorCode::kConfigInvalid, "acoustic model dims must be positive");
  Require(encoder_kernel % 2 == 1 && postnet_kernel % 2 == 1,
          ErrorCode::kConfigInvalid, "conv kernels must be odd");
  Require(!prenet_dims.empty(), ErrorCode::kConfigInvalid,
          "prenet needs at least one layer");
  for (int d : prenet_dims) {
    Require(d > 0, ErrorCode::kConfigInvalid, "prenet dims must be positive");
  }
  Require(prenet_dropout >= 0 && prenet_dropout < 1, ErrorCode::kConfigInvalid,
          "prenet dropout must be in [0, 1)");
}

AcousticModel::AcousticModel(const AcousticConfig& config, uint64_t seed,
                             std::vector<std::string> speakers)
    : config_(config), speakers_(std::move(speakers)) {
  if (speakers_.empty()) {
    for (int i = 0; i < config_.speaker_count; ++i) {
      speakers_.push_back("speaker" + std::to_string(i));
    }
  }
  config_.speaker_count = static_cast<int>(speakers_.size());
  config_.Validate();
  Rng rng(seed);
  const AcousticConfig& c = config_;
  phone_embedding_ = EmbeddingTable(c.vocab_size, c.embedding_dim, rng);
  int channels = c.embedding_dim;
  for (int i = 0; i < c.encoder_layers; ++i) {
    encoder_convs_.emplace_back(channels, c.encoder_channels, c.encoder_kernel,
                                SamePadding(c.encoder_kernel), rng);
    channels = c.encoder_channels;
  }
  encoder_lstm_ = BiLstmLayer(channels, c.encoder_hidden, rng);
  speaker_table_ = EmbeddingTable(c.speaker_count, c.speaker_dim, rng);
  int in = c.mel_dim;
  for (int d : c.prenet_dims) {
    prenet_.emplace_back(in, d, rng);
    in = d;
  }
  decoder_lstm1_ = LstmLayer(in + c.expanded_dim(), c.decoder_hidden, rng);
  decoder_lstm2_ =
      LstmLayer(c.decoder_hidden + c.expanded_dim(), c.decoder_hidden, rng);
  frame_projection_ = LinearLayer(c.decoder_hidden, c.mel_dim, rng);
  channels = c.mel_dim;
  for (int i = 0; i < c.postnet_layers; ++i) {
    const int out = i + 1 == c.postnet_layers ? c.mel_dim : c.postnet_channels;
    postnet_.emplace_back(channels, out, c.postnet_kernel,
                          SamePadding(c.postnet_kernel), rng);
    channels = out;
  }
}

int AcousticModel::SpeakerIndex(const std::string& name) const {
  for (size_t i = 0; i < speakers_.size(); ++i) {
    if (speakers_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Var AcousticModel::Encode(std::span<const int> ids) const {
  Require(!ids.empty(), ErrorCode::kInvalidArgument, "no phones to encode");
  Var x = RowsToChannels(phone_embedding_(ids));
  for (const auto& conv : encoder_convs_) x = Relu(conv(x));
  return encoder_lstm_(ChannelsToRows(x));
}

Var AcousticModel::SpeakerVector(int index) const {
  Require(index >= 0 && index < config_.speaker_count,
          ErrorCode::kUnknownSpeaker,
          "speaker index " + std::to_string(index) + " out of range");
  const int ids[1] = {index};
  return speaker_table_(ids);
}

Var AcousticModel::MeanSpeakerVector() const {
  const Tensor& t = speaker_table_.table.value();
  Tensor mean = Tensor::Matrix(1, t.cols());
  mean.AsMatrix() = t.AsMatrix().colwise().mean();
  return Constant(std::move(mean));
}

int AcousticModel::AddSpeaker(const std::string& name) {
  Require(SpeakerIndex(name) < 0, ErrorCode::kInvalidArgument,
          "speaker " + name + " already in the table");
  const Tensor& old = speaker_table_.table.value();
  Tensor grown = Tensor::Matrix(old.rows() + 1, old.cols());
  grown.AsMatrix().topRows(old.rows()) = old.AsMatrix();
  grown.AsMatrix().row(old.rows()) = old.AsMatrix().colwise().mean();
  speaker_table_.table = Var::Parameter(std::move(grown));
  speakers_.push_back(name);
  config_.speaker_count = static_cast<int>(speakers_.size());
  return config_.speaker_count - 1;
}

Var AcousticModel::Expand(std::span<const int> ids,
                          std::span<const int> durations,
                          int speaker_index) const {
  return Expand(ids, durations, SpeakerVector(speaker_index));
}

Var AcousticModel::Expand(std::span<const int> ids,
                          std::span<const int> durations,
                          const Var& speaker) const {
  Require(ids.size() == durations.size(), ErrorCode::kLengthMismatch,
          "phones and durations differ in length");
  return LengthRegulate(Encode(ids), durations, speaker);
}

Var AcousticModel::DecoderStep(const Var& prev_frame, const Var& expanded_prev,
                               const Var& expanded_now, LstmState* s1,
                               LstmState* s2, bool dropout, Rng& rng) const {
  Var x = prev_frame;
  for (const auto& layer : prenet_) {
    x = Relu(layer(x));
    if (dropout) x = Dropout(x, config_.prenet_dropout, rng);
  }
  *s1 = decoder_lstm1_.Step(ConcatCols({x, expanded_prev}), *s1);
  *s2 = decoder_lstm2_.Step(ConcatCols({s1->h, expanded_now}), *s2);
  return frame_projection_(s2->h);
}

MelPrediction AcousticModel::Decode(const Var& expanded, const Tensor* feedback,
                                    const DecodeOptions& options) const {
  Require(expanded.value().rank() == 2 &&
              expanded.cols() == config_.expanded_dim(),
          ErrorCode::kShapeMismatch, "expanded rows have the wrong width");
  const int frames = expanded.rows();
  if (feedback) {
    Require(feedback->rank() == 2 && feedback->rows() == frames,
            ErrorCode::kLengthMismatch,
            "feedback has " + std::to_string(feedback->rows()) +
                " frames, expected " + std::to_string(frames));
    Require(feedback->cols() == config_.mel_dim, ErrorCode::kShapeMismatch,
            "feedback frames must be 80 wide");
  }
  Rng rng(options.seed);
  const bool dropout = options.prenet_dropout && config_.prenet_dropout > 0;
  LstmState s1 = decoder_lstm1_.ZeroState();
  LstmState s2 = decoder_lstm2_.ZeroState();
  Var prev_frame = Constant(Tensor::Matrix(1, config_.mel_dim));
  Var prev_row = Constant(Tensor::Matrix(1, config_.expanded_dim()));
  std::vector<Var> outputs;
  outputs.reserve(static_cast<size_t>(frames));
  for (int t = 0; t < frames; ++t) {
    const Var row = SliceRows(expanded, t, 1);
    const Var frame =
        DecoderStep(prev_frame, prev_row, row, &s1, &s2, dropout, rng);
    outputs.push_back(frame);
    if (feedback) {
      Tensor gt = Tensor::Matrix(1, config_.mel_dim);
      gt.AsMatrix() = feedback->AsMatrix().row(t);
      prev_frame = Constant(std::move(gt));
    } else {
      prev_frame = frame;
    }
    prev_row = row;
  }
  MelPrediction out;
  out.before_postnet = ConcatRows(outputs);
  out.after_postnet = Add(out.before_postnet, Postnet(out.before_postnet));
  return out;
}

MelPrediction AcousticModel::TeacherForced(const Var& expanded,
                                           const Tensor& mel_gt,
                                           const DecodeOptions& options) const {
  return Decode(expanded, &mel_gt, options);
}

MelPrediction AcousticModel::Autoregressive(
    const Var& expanded, const DecodeOptions& options,
    const Tensor* forced_feedback) const {
  return Decode(expanded, forced_feedback, options);
}

Var AcousticModel::Postnet(const Var& before) const {
  Var x = RowsToChannels(before);
  for (size_t i = 0; i < postnet_.size(); ++i) {
    x = postnet_[i](x);
    if (i + 1 < postnet_.size()) x = Tanh(x);
  }
  return ChannelsToRows(x);
}

void AcousticModel::SetOutputBias(const Tensor& frame) {
  Require(static_cast<int>(frame.size()) == config_.mel_dim,
          ErrorCode::kShapeMismatch, "bias frame must have mel_dim values");
  frame_projection_.bias.mutable_value().values() = frame.values();
}

NamedParams AcousticModel::Parameters() const {
  NamedParams out;
  phone_embedding_.Collect("phone_embedding", &out);
  for (size_t i = 0; i < encoder_convs_.size(); ++i) {
    encoder_convs_[i].Collect("encoder.conv" + std::to_string(i), &out);
  }
  encoder_lstm_.Collect("encoder.lstm", &out);
  speaker_table_.Collect("speaker_table", &out);
  for (size_t i = 0; i < prenet_.size(); ++i) {
    prenet_[i].Collect("prenet" + std::to_string(i), &out);
  }
  decoder_lstm1_.Collect("decoder.lstm1", &out);
  decoder_lstm2_.Collect("decoder.lstm2", &out);
  frame_projection_.Collect("decoder.projection", &out);
  for (size_t i = 0; i < postnet_.size(); ++i) {
    postnet_[i].Collect("postnet" + std::to_string(i), &out);
  }
  return out;
}

AcousticModel AcousticModel::Clone() const {
  AcousticModel copy(config_, 0, speakers_);
  CopyParameterValues(Parameters(), copy.Parameters());
  return copy;
}

Var AcousticLoss(const MelPrediction& prediction, const Tensor& mel_gt) {
  const auto check = [&mel_gt](const Var& v) {
    Require(v.value().shape() == mel_gt.shape(), ErrorCode::kShapeMismatch,
            "prediction " + ShapeString(v.value().shape()) + " vs target " +
                ShapeString(mel_gt.shape()));
  };
  check(prediction.before_postnet);
  check(prediction.after_postnet);
  return Add(MseLoss(prediction.before_postnet, mel_gt),
             MseLoss(prediction.after_postnet, mel_gt));
}

}  // namespace vclone

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

#include "nn/layers.h"

#include <cmath>
#include <map>

#include "autograd/lstm_cell.h"
#include "common/error.h"

namespace vclone {

Tensor UniformTensor(std::vector<int> shape, double bound, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = rng.Uniform(-bound, bound);
  return t;
}

Tensor NormalTensor(std::vector<int> shape, double stddev, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = rng.Normal(0.0, stddev);
  return t;
}

LinearLayer::LinearLayer(int in, int out, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  weight = Var::Parameter(UniformTensor({in, out}, bound, rng));
  bias = Var::Parameter(UniformTensor({out}, bound, rng));
}

void LinearLayer::Collect(const std::string& prefix, NamedParams* out) const {
  out->emplace_back(prefix + ".weight", weight);
  out->emplace_back(prefix + ".bias", bias);
}

Conv1dLayer::Conv1dLayer(int in, int out, int kernel, Conv1dOptions opts,
                         Rng& rng, double init_stddev)
    : options(opts) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in * kernel));
  weight = Var::Parameter(init_stddev > 0
                              ? NormalTensor({out, in, kernel}, init_stddev, rng)
                              : UniformTensor({out, in, kernel}, bound, rng));
  bias = Var::Parameter(UniformTensor({out}, bound, rng));
}

void Conv1dLayer::Collect(const std::string& prefix, NamedParams* out) const {
  out->emplace_back(prefix + ".weight", weight);
  out->emplace_back(prefix + ".bias", bias);
}

ConvTranspose1dLayer::ConvTranspose1dLayer(int in, int out, int kernel,
                                           int stride_, int padding_, Rng& rng,
                                           double init_stddev)
    : stride(stride_), padding(padding_) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(out * kernel));
  weight = Var::Parameter(init_stddev > 0
                              ? NormalTensor({in, out, kernel}, init_stddev, rng)
                              : UniformTensor({in, out, kernel}, bound, rng));
  bias = Var::Parameter(UniformTensor({out}, bound, rng));
}

void ConvTranspose1dLayer::Collect(const std::string& prefix,
                                   NamedParams* out) const {
  out->emplace_back(prefix + ".weight", weight);
  out->emplace_back(prefix + ".bias", bias);
}

EmbeddingTable::EmbeddingTable(int vocab, int dim, Rng& rng) {
  const double bound =
      std::sqrt(3.0) * std::sqrt(2.0 / static_cast<double>(vocab + dim));
  table = Var::Parameter(UniformTensor({vocab, dim}, bound, rng));
}

void EmbeddingTable::Collect(const std::string& prefix,
                             NamedParams* out) const {
  out->emplace_back(prefix + ".table", table);
}

LstmLayer::LstmLayer(int in, int hidden_, Rng& rng) : hidden(hidden_) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  w_ih = Var::Parameter(UniformTensor({in, 4 * hidden}, bound, rng));
  w_hh = Var::Parameter(UniformTensor({hidden, 4 * hidden}, bound, rng));
  bias = Var::Parameter(UniformTensor({4 * hidden}, bound, rng));
}

LstmState LstmLayer::ZeroState(int rows) const {
  return {Constant(Tensor::Matrix(rows, hidden)),
          Constant(Tensor::Matrix(rows, hidden))};
}

LstmState LstmLayer::Step(const Var& x, const LstmState& state) const {
  Var packed = LstmCell(x, state.h, state.c, w_ih, w_hh, bias);
  return {SliceCols(packed, 0, hidden), SliceCols(packed, hidden, hidden)};
}

Var LstmLayer::Run(const Var& x, bool reverse) const {
  const int steps = x.rows();
  Require(steps > 0, ErrorCode::kShapeMismatch, "LstmLayer::Run on empty input");
  std::vector<Var> outputs(static_cast<size_t>(steps));
  LstmState state = ZeroState();
  for (int i = 0; i < steps; ++i) {
    const int t = reverse ? steps - 1 - i : i;
    state = Step(SliceRows(x, t, 1), state);
    outputs[static_cast<size_t>(t)] = state.h;
  }
  return ConcatRows(outputs);
}

void LstmLayer::Collect(const std::string& prefix, NamedParams* out) const {
  out->emplace_back(prefix + ".w_ih", w_ih);
  out->emplace_back(prefix + ".w_hh", w_hh);
  out->emplace_back(prefix + ".bias", bias);
}

BiLstmLayer::BiLstmLayer(int in, int hidden_per_direction, Rng& rng)
    : forward(in, hidden_per_direction, rng),
      backward(in, hidden_per_direction, rng) {}

Var BiLstmLayer::operator()(const Var& x) const {
  return ConcatCols({forward.Run(x, false), backward.Run(x, true)});
}

void BiLstmLayer::Collect(const std::string& prefix, NamedParams* out) const {
  forward.Collect(prefix + ".fwd", out);
  backward.Collect(prefix + ".bwd", out);
}

Var RowsToChannels(const Var& x) {
  const int t = x.rows();
  const int c = x.cols();
  return Reshape(Transpose(x), {1, c, t});
}

Var ChannelsToRows(const Var& x) {
  Require(x.value().rank() == 3 && x.shape()[0] == 1, ErrorCode::kShapeMismatch,
          "ChannelsToRows expects (1 x c x t)");
  const int c = x.shape()[1];
  const int t = x.shape()[2];
  return Transpose(Reshape(x, {c, t}));
}

void CopyParameterValues(const NamedParams& from, const NamedParams& to) {
  std::map<std::string, const Var*> index;
  for (const auto& [name, var] : from) index[name] = &var;
  for (const auto& [name, var] : to) {
    auto it = index.find(name);
    Require(it != index.end(), ErrorCode::kShapeMismatch,
            "missing parameter " + name);
    Require(it->second->shape() == var.shape(), ErrorCode::kShapeMismatch,
            "shape mismatch for " + name);
    var.mutable_value() = it->second->value();
  }
}

size_t ParameterCount(const NamedParams& params) {
  size_t n = 0;
  for (const auto& [name, var] : params) n += var.value().size();
  return n;
}

}  // namespace vclone

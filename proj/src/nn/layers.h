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

#ifndef VCLONE_NN_LAYERS_H_
#define VCLONE_NN_LAYERS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "autograd/conv.h"
#include "autograd/ops.h"
#include "common/rng.h"

namespace vclone {

// Ordered (name, parameter) pairs; names are stable checkpoint keys.
using NamedParams = std::vector<std::pair<std::string, Var>>;

Tensor UniformTensor(std::vector<int> shape, double bound, Rng& rng);
Tensor NormalTensor(std::vector<int> shape, double stddev, Rng& rng);

struct LinearLayer {
  Var weight;  // in x out
  Var bias;    // out

  LinearLayer() = default;
  LinearLayer(int in, int out, Rng& rng);
  Var operator()(const Var& x) const { return Linear(x, weight, bias); }
  void Collect(const std::string& prefix, NamedParams* out) const;
};

struct Conv1dLayer {
  Var weight;  // out x in x kernel
  Var bias;
  Conv1dOptions options;

  Conv1dLayer() = default;
  // `init_stddev` > 0 draws N(0, init_stddev) instead of the fan-in uniform.
  Conv1dLayer(int in, int out, int kernel, Conv1dOptions options, Rng& rng,
              double init_stddev = 0.0);
  Var operator()(const Var& x) const {
    return Conv1d(x, weight, bias, options);
  }
  void Collect(const std::string& prefix, NamedParams* out) const;
};

// Length-preserving padding for odd kernels.
inline Conv1dOptions SamePadding(int kernel, int dilation = 1) {
  Conv1dOptions o;
  o.dilation = dilation;
  o.padding = dilation * (kernel - 1) / 2;
  return o;
}

struct ConvTranspose1dLayer {
  Var weight;  // in x out x kernel
  Var bias;
  int stride = 1;
  int padding = 0;

  ConvTranspose1dLayer() = default;
  ConvTranspose1dLayer(int in, int out, int kernel, int stride, int padding,
                       Rng& rng, double init_stddev = 0.0);
  Var operator()(const Var& x) const {
    return ConvTranspose1d(x, weight, bias, stride, padding);
  }
  void Collect(const std::string& prefix, NamedParams* out) const;
};

struct EmbeddingTable {
  Var table;  // vocab x dim

  EmbeddingTable() = default;
  EmbeddingTable(int vocab, int dim, Rng& rng);
  Var operator()(std::span<const int> ids) const {
    return EmbeddingLookup(table, ids);
  }
  void Collect(const std::string& prefix, NamedParams* out) const;
};

struct LstmState {
  Var h;
  Var c;
};

struct LstmLayer {
  Var w_ih;  // in x 4h
  Var w_hh;  // h x 4h
  Var bias;  // 4h
  int hidden = 0;

  LstmLayer() = default;
  LstmLayer(int in, int hidden, Rng& rng);

  LstmState ZeroState(int rows = 1) const;
  LstmState Step(const Var& x, const LstmState& state) const;
  // x: (t x in) -> (t x hidden); `reverse` scans right to left but keeps
  // the output rows in input order.
  Var Run(const Var& x, bool reverse = false) const;
  void Collect(const std::string& prefix, NamedParams* out) const;
};

struct BiLstmLayer {
  LstmLayer forward;
  LstmLayer backward;

  BiLstmLayer() = default;
  BiLstmLayer(int in, int hidden_per_direction, Rng& rng);
  // (t x in) -> (t x 2 * hidden_per_direction)
  Var operator()(const Var& x) const;
  void Collect(const std::string& prefix, NamedParams* out) const;
};

// (t x c) row-major matrix <-> (1 x c x t) conv layout.
Var RowsToChannels(const Var& x);
Var ChannelsToRows(const Var& x);

// Copies values by name; shapes must match exactly.
void CopyParameterValues(const NamedParams& from, const NamedParams& to);
size_t ParameterCount(const NamedParams& params);

}  // namespace vclone

#endif  // VCLONE_NN_LAYERS_H_

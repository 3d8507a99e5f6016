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

#ifndef VCLONE_AUTOGRAD_OPS_H_
#define VCLONE_AUTOGRAD_OPS_H_

#include <span>
#include <vector>

#include "autograd/variable.h"
#include "common/rng.h"

namespace vclone {

// Matrix ops. Inputs are rank 2 unless noted.
Var MatMul(const Var& a, const Var& b);
// x (n x in) * w (in x out) + bias (out), bias optional.
Var Linear(const Var& x, const Var& w, const Var& bias);

// Elementwise, identical shapes.
Var Add(const Var& a, const Var& b);
Var Sub(const Var& a, const Var& b);
Var Mul(const Var& a, const Var& b);
Var Scale(const Var& a, double factor);

Var Relu(const Var& a);
Var LeakyRelu(const Var& a, double slope);
Var Tanh(const Var& a);
Var Sigmoid(const Var& a);

Var ConcatCols(const std::vector<Var>& parts);
Var ConcatRows(const std::vector<Var>& parts);
Var SliceCols(const Var& a, int begin, int count);
Var SliceRows(const Var& a, int begin, int count);
Var Transpose(const Var& a);
Var Reshape(const Var& a, std::vector<int> shape);

// Rows of `table` selected by `ids`; gradient scatter-adds into the table.
Var EmbeddingLookup(const Var& table, std::span<const int> ids);
// (1 x c) -> (times x c).
Var RepeatRows(const Var& row, int times);
// Row i of `a` repeated counts[i] times, in order.
Var ExpandRows(const Var& a, std::span<const int> counts);

// Inverted dropout; identity when p == 0.
Var Dropout(const Var& a, double p, Rng& rng);

// Reductions to a single-element result.
Var Sum(const Var& a);
Var Mean(const Var& a);
Var MseLoss(const Var& prediction, const Var& target);
Var MseLoss(const Var& prediction, const Tensor& target);
Var L1Loss(const Var& prediction, const Var& target);

// Same value, cut from the graph.
Var Detach(const Var& a);
Var Constant(Tensor value);

}  // namespace vclone

#endif  // VCLONE_AUTOGRAD_OPS_H_

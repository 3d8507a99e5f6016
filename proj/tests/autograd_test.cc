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

#include <gtest/gtest.h>

#include <cmath>

#include "autograd/conv.h"
#include "autograd/ops.h"
#include "common/rng.h"
#include "nn/adam.h"
#include "nn/layers.h"
#include "test_util.h"

namespace vclone {
namespace {

using testing::CheckGradients;

Var RandomParam(std::vector<int> shape, Rng& rng, double scale = 0.5) {
  return Var::Parameter(NormalTensor(std::move(shape), scale, rng));
}

// Weighted sum so every output element gets a distinct upstream gradient.
Var Probe(const Var& x, uint64_t seed = 99) {
  Rng rng(seed);
  const Var w(NormalTensor(x.shape(), 1.0, rng));
  return Sum(Mul(x, w));
}

TEST(Autograd, ElementwiseAndMatrixOps) {
  Rng rng(1);
  const Var a = RandomParam({3, 4}, rng);
  const Var b = RandomParam({3, 4}, rng);
  const Var m = RandomParam({4, 2}, rng);
  const Var bias = RandomParam({2}, rng);
  const auto r = CheckGradients(
      {{"a", a}, {"b", b}, {"m", m}, {"bias", bias}}, [&] {
        const Var x = Add(Mul(Tanh(a), Sigmoid(b)), Scale(Sub(a, b), 0.3));
        const Var y = Linear(LeakyRelu(x, 0.1), m, bias);
        return Add(Probe(MatMul(Transpose(y), y)), Mean(Relu(y)));
      });
  EXPECT_LT(r.worst_relative, 1e-6) << r.worst_param;
}

TEST(Autograd, StructuralOps) {
  Rng rng(2);
  const Var a = RandomParam({4, 3}, rng);
  const Var row = RandomParam({1, 2}, rng);
  const Var table = RandomParam({5, 3}, rng);
  const std::vector<int> ids = {4, 0, 4, 2};
  const std::vector<int> counts = {2, 1, 3, 1};
  const auto r = CheckGradients(
      {{"a", a}, {"row", row}, {"table", table}}, [&] {
        const Var e = EmbeddingLookup(table, ids);
        const Var cat = ConcatCols({Add(a, e), RepeatRows(row, 4)});
        const Var ex = ExpandRows(cat, counts);
        const Var rows = ConcatRows(
            {SliceRows(ex, 1, 4),
             ConcatCols({SliceCols(ex, 2, 3), SliceCols(ex, 0, 2)})});
        return Probe(Reshape(rows, {static_cast<int>(rows.value().size())}));
      });
  EXPECT_LT(r.worst_relative, 1e-6) << r.worst_param;
}

TEST(Autograd, Losses) {
  Rng rng(3);
  const Var p = RandomParam({3, 5}, rng);
  const Tensor target = NormalTensor({3, 5}, 1.0, rng);
  const auto r = CheckGradients({{"p", p}}, [&] {
    return Add(MseLoss(p, target), L1Loss(p, Var(target)));
  });
  EXPECT_LT(r.worst_relative, 1e-6);
  const Var zero = MseLoss(Var(target), target);
  EXPECT_EQ(zero.value().item(), 0.0);
}

TEST(Autograd, ConvolutionFamily) {
  Rng rng(4);
  const Var x = RandomParam({1, 3, 13}, rng);
  const Var w = RandomParam({2, 3, 3}, rng);
  const Var b = RandomParam({2}, rng);
  const Var wt = RandomParam({2, 3, 4}, rng);
  const Var bt = RandomParam({3}, rng);
  Conv1dOptions o;
  o.stride = 2;
  o.padding = 2;
  o.dilation = 2;
  const auto r = CheckGradients(
      {{"x", x}, {"w", w}, {"b", b}, {"wt", wt}, {"bt", bt}}, [&] {
        const Var y = Conv1d(ReflectPad1d(x, 2, 3), w, b, o);
        const Var up = ConvTranspose1d(y, wt, bt, 2, 1);
        const Var pooled = AvgPool1d(up, 4, 2, 2);
        return Add(Probe(pooled), Probe(FoldPeriod(ReflectPad1d(x, 0, 2), 3)));
      });
  EXPECT_LT(r.worst_relative, 1e-6) << r.worst_param;
}

TEST(Autograd, ConvTransposeLength) {
  Rng rng(5);
  const Var x(NormalTensor({1, 2, 7}, 1.0, rng));
  const Var w(NormalTensor({2, 1, 8}, 1.0, rng));
  EXPECT_EQ(ConvTranspose1d(x, w, Var(), 4, 2).value().dim(2), 28);
}

TEST(Autograd, RecurrentLayers) {
  Rng rng(6);
  const BiLstmLayer lstm(3, 2, rng);
  const Var x = RandomParam({5, 3}, rng);
  NamedParams params = {{"x", x}};
  lstm.Collect("lstm", &params);
  const auto r = CheckGradients(params, [&] { return Probe(lstm(x)); });
  EXPECT_LT(r.worst_relative, 1e-6) << r.worst_param;
}

TEST(Autograd, ReverseRunMatchesManualSteps) {
  Rng rng(7);
  const LstmLayer lstm(2, 3, rng);
  const Var x(NormalTensor({4, 2}, 1.0, rng));
  const Tensor out = lstm.Run(x, true).value();
  LstmState s = lstm.ZeroState();
  for (int t = 3; t >= 0; --t) {
    s = lstm.Step(SliceRows(x, t, 1), s);
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(out.at(t, j), s.h.value().at(0, j));
  }
}

TEST(Autograd, NoGradGuardBuildsConstants) {
  Rng rng(8);
  const Var a = RandomParam({2, 2}, rng);
  NoGradGuard guard;
  EXPECT_FALSE(Tanh(a).requires_grad());
}

TEST(Autograd, DropoutIsSeededAndScaled) {
  const Var a(Tensor({1, 1000}, 1.0));
  Rng r1(5);
  Rng r2(5);
  const Tensor x = Dropout(a, 0.5, r1).value();
  const Tensor y = Dropout(a, 0.5, r2).value();
  EXPECT_EQ(x.values(), y.values());
  for (double v : x.values()) EXPECT_TRUE(v == 0.0 || v == 2.0);
}

TEST(Adam, MinimisesQuadratic) {
  const Var p = Var::Parameter(Tensor({3}, std::vector<double>{3, -2, 1}));
  AdamOptions o;
  o.learning_rate = 0.1;
  Adam adam({{"p", p}}, o);
  for (int i = 0; i < 500; ++i) {
    adam.ZeroGrad();
    Backward(Sum(Mul(p, p)));
    adam.Step();
  }
  for (double v : p.value().values()) EXPECT_NEAR(v, 0.0, 1e-2);
}

TEST(Adam, ClipGradNormScalesToLimit) {
  const Var p = Var::Parameter(Tensor({2}, std::vector<double>{0, 0}));
  p.mutable_grad() = Tensor({2}, std::vector<double>{3, 4});
  const double norm = ClipGradNorm({{"p", p}}, 1.0);
  EXPECT_DOUBLE_EQ(norm, 5.0);
  EXPECT_NEAR(p.grad()[0], 0.6, 1e-12);
  EXPECT_NEAR(p.grad()[1], 0.8, 1e-12);
}

}  // namespace
}  // namespace vclone

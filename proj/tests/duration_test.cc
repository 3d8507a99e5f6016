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

#include "common/rng.h"
#include "duration/duration_model.h"
#include "test_util.h"

namespace vclone {
namespace {

using testing::CheckGradients;
using testing::CodeOf;

DurationConfig Small(int vocab = 10) {
  DurationConfig c;
  c.vocab_size = vocab;
  c.embedding_dim = 8;
  c.hidden = 8;
  return c;
}

Var LogOf(const std::vector<int>& frames, double offset = 0.0) {
  Tensor t = Tensor::Matrix(static_cast<int>(frames.size()), 1);
  for (size_t i = 0; i < frames.size(); ++i) t[i] = std::log(frames[i]) + offset;
  return Var(t);
}

TEST(DurationModel, OneOutputPerPhone) {
  const DurationModel m(Small(), 1);
  const std::vector<int> ids = {1, 2, 3, 4, 5, 6, 7};
  const Var out = m.Forward(ids);
  EXPECT_EQ(out.rows(), 7);
  EXPECT_EQ(out.cols(), 1);
}

TEST(DurationModel, EmptyInputGivesEmptyOutput) {
  const DurationModel m(Small(), 1);
  EXPECT_EQ(m.Forward(std::vector<int>{}).rows(), 0);
  EXPECT_TRUE(PredictDurations(m, std::vector<int>{}).empty());
}

TEST(DurationModel, RejectsOutOfVocabularyIds) {
  const DurationModel m(Small(10), 1);
  EXPECT_EQ(CodeOf([&] { m.Forward(std::vector<int>{1, 10}); }),
            ErrorCode::kIndexOutOfVocab);
  EXPECT_EQ(CodeOf([&] { m.Forward(std::vector<int>{-1}); }),
            ErrorCode::kIndexOutOfVocab);
}

TEST(DurationModel, SameSeedSameWeights) {
  const DurationModel a(Small(), 5);
  const DurationModel b(Small(), 5);
  const std::vector<int> ids = {3, 1, 4};
  EXPECT_EQ(a.ForwardValues(ids), b.ForwardValues(ids));
}

TEST(DurationLoss, ZeroAtTargetAndOneAtUnitOffset) {
  const std::vector<int> target = {3, 1, 7, 12};
  EXPECT_NEAR(DurationLoss(LogOf(target), target).value().item(), 0.0, 1e-15);
  EXPECT_NEAR(DurationLoss(LogOf(target, 1.0), target).value().item(), 1.0,
              1e-12);
}

TEST(DurationLoss, ErrorContracts) {
  EXPECT_EQ(CodeOf([] { DurationLoss(LogOf({1, 2, 3}), std::vector<int>{1, 2, 3, 4}); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([] { DurationLoss(LogOf({1, 2}), std::vector<int>{1, 0}); }),
            ErrorCode::kZeroDuration);
}

TEST(DurationLoss, PermutationEquivariant) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + rng.UniformInt(12);
    std::vector<int> target(n);
    Tensor pred = Tensor::Matrix(n, 1);
    for (int i = 0; i < n; ++i) {
      target[i] = 1 + rng.UniformInt(20);
      pred[i] = rng.Normal() * 2.0;
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.UniformInt(i + 1)]);
    std::vector<int> target_p(n);
    Tensor pred_p = Tensor::Matrix(n, 1);
    for (int i = 0; i < n; ++i) {
      target_p[i] = target[perm[i]];
      pred_p[i] = pred[perm[i]];
    }
    EXPECT_NEAR(DurationLoss(Var(pred), target).value().item(),
                DurationLoss(Var(pred_p), target_p).value().item(), 1e-12);
  }
}

TEST(PredictDurations, RoundsAndClamps) {
  const std::vector<double> logs = {std::log(4.2), std::log(0.3), std::log(4.6),
                                    -50.0, 1000.0};
  const std::vector<int> frames = LogDurationsToFrames(logs, 1);
  EXPECT_EQ(frames[0], 4);
  EXPECT_EQ(frames[1], 1);
  EXPECT_EQ(frames[2], 5);
  EXPECT_EQ(frames[3], 1);
  EXPECT_GE(frames[4], 1);
}

TEST(PredictDurations, AlwaysAtLeastOneFrame) {
  const DurationModel m(Small(), 3);
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> ids(1 + rng.UniformInt(20));
    for (int& id : ids) id = rng.UniformInt(10);
    const std::vector<int> frames = PredictDurations(m, ids);
    ASSERT_EQ(frames.size(), ids.size());
    for (int f : frames) EXPECT_GE(f, 1);
  }
}

TEST(DurationModel, GradientMatchesFiniteDifferences) {
  DurationConfig c;
  c.vocab_size = 6;
  c.embedding_dim = 4;
  c.hidden = 3;
  const DurationModel m(c, 2);
  const std::vector<int> ids = {0, 3, 5, 2, 1};
  const std::vector<int> target = {2, 5, 1, 8, 3};
  const auto r = CheckGradients(m.Parameters(), [&] {
    return DurationLoss(m.Forward(ids), target);
  });
  EXPECT_GT(r.checked, 50u);
  EXPECT_LT(r.worst_relative, 1e-4) << r.worst_param;
}

TEST(DurationModel, OverfitReproducesDurationsExactly) {
  DurationConfig c = Small(12);
  c.embedding_dim = 16;
  c.hidden = 16;
  c.learning_rate = 1e-2;
  DurationModel m(c, 7);
  const DurationExample ex{{0, 4, 7, 1, 9, 3, 11, 0}, {6, 9, 4, 3, 12, 7, 10, 8}};
  DurationTrainOptions o;
  o.max_epochs = 3000;
  o.patience = o.max_epochs;
  o.holdout_fraction = 0.0;
  o.batch_size = 1;
  const DurationTrainReport r = TrainDurationModel(&m, {ex}, o);
  EXPECT_LT(r.final_train_loss, r.initial_loss);
  EXPECT_EQ(PredictDurations(m, ex.phone_ids), ex.durations);
}

TEST(DurationModel, TrainingLowersHoldoutLoss) {
  DurationModel m(Small(8), 3);
  Rng rng(12);
  std::vector<DurationExample> data;
  for (int u = 0; u < 30; ++u) {
    DurationExample ex;
    for (int i = 0; i < 6; ++i) {
      const int id = rng.UniformInt(8);
      ex.phone_ids.push_back(id);
      ex.durations.push_back(2 + id * 2);  // duration depends on identity
    }
    data.push_back(ex);
  }
  DurationTrainOptions o;
  o.max_epochs = 40;
  o.holdout_fraction = 0.2;
  const double before = EvaluateDurationLoss(m, data);
  const DurationTrainReport r = TrainDurationModel(&m, data, o);
  EXPECT_LT(EvaluateDurationLoss(m, data), 0.5 * before);
  EXPECT_GT(r.epochs, 0);
  EXPECT_FALSE(r.train_curve.empty());
}

}  // namespace
}  // namespace vclone

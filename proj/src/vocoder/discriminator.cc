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

#include "vocoder/discriminator.h"

#include <set>

#include "common/error.h"

namespace vclone {

void DiscriminatorConfig::Validate() const {
  std::set<int> seen;
  for (int p : periods) {
    Require(p >= 1, ErrorCode::kConfigInvalid, "periods must be positive");
    Require(seen.insert(p).second, ErrorCode::kConfigInvalid,
            "discriminator periods must be distinct");
  }
  Require(scales >= 0, ErrorCode::kConfigInvalid, "scales must be >= 0");
  Require(!periods.empty() || scales > 0, ErrorCode::kConfigInvalid,
          "at least one discriminator is required");
  Require(!period_channels.empty() && !scale_channels.empty(),
          ErrorCode::kConfigInvalid, "discriminator channels are empty");
}

namespace {

Conv1dOptions Strided(int kernel, int stride) {
  Conv1dOptions o;
  o.stride = stride;
  o.padding = kernel / 2;
  return o;
}

}  // namespace

Discriminators::Discriminators(const DiscriminatorConfig& config,
                               uint64_t seed)
    : config_(config) {
  config_.Validate();
  Rng rng(seed);
  for (size_t p = 0; p < config_.periods.size(); ++p) {
    Stack s;
    int in = 1;
    for (int ch : config_.period_channels) {
      s.layers.emplace_back(in, ch, 5, Strided(5, 3), rng);
      in = ch;
    }
    s.layers.emplace_back(in, in, 5, Strided(5, 1), rng);
    s.post = Conv1dLayer(in, 1, 3, Strided(3, 1), rng);
    period_stacks_.push_back(std::move(s));
  }
  for (int k = 0; k < config_.scales; ++k) {
    Stack s;
    int in = 1;
    s.layers.emplace_back(in, config_.scale_channels.front(), 15,
                          Strided(15, 1), rng);
    in = config_.scale_channels.front();
    for (int ch : config_.scale_channels) {
      s.layers.emplace_back(in, ch, 9, Strided(9, 4), rng);
      in = ch;
    }
    s.layers.emplace_back(in, in, 5, Strided(5, 1), rng);
    s.post = Conv1dLayer(in, 1, 3, Strided(3, 1), rng);
    scale_stacks_.push_back(std::move(s));
  }
}

int Discriminators::count() const {
  return static_cast<int>(period_stacks_.size() + scale_stacks_.size());
}

Var Discriminators::RunStack(const Stack& stack, Var x,
                             std::vector<Var>* features) const {
  for (const auto& layer : stack.layers) {
    x = LeakyRelu(layer(x), config_.leaky_slope);
    features->push_back(x);
  }
  x = stack.post(x);
  features->push_back(x);
  return x;
}

DiscriminatorOutput Discriminators::Forward(const Var& wave) const {
  Require(wave.value().rank() == 3 && wave.value().dim(0) == 1 &&
              wave.value().dim(1) == 1,
          ErrorCode::kShapeMismatch, "discriminator input must be (1 x 1 x n)");
  const int n = wave.value().dim(2);
  DiscriminatorOutput out;
  for (size_t i = 0; i < period_stacks_.size(); ++i) {
    const int p = config_.periods[i];
    const int padded = (n + p - 1) / p * p;
    Var x = wave;
    if (padded != n) {
      Require(padded - n < n, ErrorCode::kShapeMismatch,
              "waveform too short for period " + std::to_string(p));
      x = ReflectPad1d(x, 0, padded - n);
    }
    std::vector<Var> features;
    out.scores.push_back(RunStack(period_stacks_[i], FoldPeriod(x, p), &features));
    out.features.push_back(std::move(features));
  }
  Var x = wave;
  for (size_t i = 0; i < scale_stacks_.size(); ++i) {
    if (i > 0) x = AvgPool1d(x, 4, 2, 2);
    std::vector<Var> features;
    out.scores.push_back(RunStack(scale_stacks_[i], x, &features));
    out.features.push_back(std::move(features));
  }
  return out;
}

NamedParams Discriminators::Parameters() const {
  NamedParams out;
  const auto collect = [&out](const Stack& s, const std::string& prefix) {
    for (size_t i = 0; i < s.layers.size(); ++i) {
      s.layers[i].Collect(prefix + ".conv" + std::to_string(i), &out);
    }
    s.post.Collect(prefix + ".post", &out);
  };
  for (size_t i = 0; i < period_stacks_.size(); ++i) {
    collect(period_stacks_[i], "mpd" + std::to_string(config_.periods[i]));
  }
  for (size_t i = 0; i < scale_stacks_.size(); ++i) {
    collect(scale_stacks_[i], "msd" + std::to_string(i));
  }
  return out;
}

Discriminators Discriminators::Clone() const {
  Discriminators copy(config_, 0);
  CopyParameterValues(Parameters(), copy.Parameters());
  return copy;
}

}  // namespace vclone

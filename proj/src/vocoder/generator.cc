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

#include "vocoder/generator.h"

#include "common/error.h"

namespace vclone {

int GeneratorConfig::hop() const {
  int product = 1;
  for (int u : upsample_factors) product *= u;
  return product;
}

void GeneratorConfig::Validate(int expected_hop) const {
  Require(!upsample_factors.empty(), ErrorCode::kConfigInvalid,
          "generator needs upsampling stages");
  for (int u : upsample_factors) {
    Require(u >= 2 && u % 2 == 0, ErrorCode::kConfigInvalid,
            "upsample factors must be even");
  }
  Require(hop() == expected_hop, ErrorCode::kConfigInvalid,
          "upsample factors multiply to " + std::to_string(hop()) +
              ", hop is " + std::to_string(expected_hop));
  Require(initial_channels >> upsample_factors.size() >= 1,
          ErrorCode::kConfigInvalid, "too few generator channels");
  Require(!resblock_kernels.empty() && !resblock_dilations.empty(),
          ErrorCode::kConfigInvalid, "generator needs residual blocks");
  for (int k : resblock_kernels) {
    Require(k % 2 == 1, ErrorCode::kConfigInvalid, "kernels must be odd");
  }
  Require(pre_kernel % 2 == 1 && post_kernel % 2 == 1,
          ErrorCode::kConfigInvalid, "kernels must be odd");
  Require(mel_dim > 0, ErrorCode::kConfigInvalid, "mel_dim must be positive");
}

Generator::Generator(const GeneratorConfig& config, uint64_t seed)
    : config_(config) {
  config_.Validate(config_.hop());
  Rng rng(seed);
  const double sd = config_.init_stddev;
  int ch = config_.initial_channels;
  conv_pre_ = Conv1dLayer(config_.mel_dim, ch, config_.pre_kernel,
                          SamePadding(config_.pre_kernel), rng);
  for (int u : config_.upsample_factors) {
    ups_.emplace_back(ch, ch / 2, 2 * u, u, u / 2, rng, sd);
    ch /= 2;
    std::vector<ResBlock> stage;
    for (int k : config_.resblock_kernels) {
      ResBlock block;
      for (int d : config_.resblock_dilations) {
        block.dilated.emplace_back(ch, ch, k, SamePadding(k, d), rng, sd);
        block.plain.emplace_back(ch, ch, k, SamePadding(k), rng, sd);
      }
      stage.push_back(std::move(block));
    }
    resblocks_.push_back(std::move(stage));
  }
  conv_post_ = Conv1dLayer(ch, 1, config_.post_kernel,
                           SamePadding(config_.post_kernel), rng);
}

Var Generator::RunResBlock(const ResBlock& block, const Var& x) const {
  Var out = x;
  for (size_t i = 0; i < block.dilated.size(); ++i) {
    Var h = block.dilated[i](LeakyRelu(out, config_.leaky_slope));
    h = block.plain[i](LeakyRelu(h, config_.leaky_slope));
    out = Add(out, h);
  }
  return out;
}

Var Generator::Forward(const Var& mel) const {
  Require(mel.value().rank() == 2 && mel.cols() == config_.mel_dim &&
              mel.rows() >= 1,
          ErrorCode::kShapeMismatch,
          "generator input must be (T x " + std::to_string(config_.mel_dim) +
              ") with T >= 1");
  Var x = conv_pre_(RowsToChannels(mel));
  for (size_t s = 0; s < ups_.size(); ++s) {
    x = ups_[s](LeakyRelu(x, config_.leaky_slope));
    Var fused;
    for (const auto& block : resblocks_[s]) {
      const Var y = RunResBlock(block, x);
      fused = fused.defined() ? Add(fused, y) : y;
    }
    x = Scale(fused, 1.0 / static_cast<double>(resblocks_[s].size()));
  }
  return Tanh(conv_post_(LeakyRelu(x, 0.01)));
}

std::vector<double> Generator::Generate(const Tensor& mel) const {
  NoGradGuard no_grad;
  return Forward(Var(mel)).value().values();
}

NamedParams Generator::Parameters() const {
  NamedParams out;
  conv_pre_.Collect("conv_pre", &out);
  for (size_t s = 0; s < ups_.size(); ++s) {
    const std::string stage = "stage" + std::to_string(s);
    ups_[s].Collect(stage + ".up", &out);
    for (size_t b = 0; b < resblocks_[s].size(); ++b) {
      const auto& block = resblocks_[s][b];
      for (size_t i = 0; i < block.dilated.size(); ++i) {
        const std::string name =
            stage + ".res" + std::to_string(b) + "." + std::to_string(i);
        block.dilated[i].Collect(name + ".dilated", &out);
        block.plain[i].Collect(name + ".plain", &out);
      }
    }
  }
  conv_post_.Collect("conv_post", &out);
  return out;
}

Generator Generator::Clone() const {
  Generator copy(config_, 0);
  CopyParameterValues(Parameters(), copy.Parameters());
  return copy;
}

}  // namespace vclone

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

#ifndef VCLONE_VOCODER_GENERATOR_H_
#define VCLONE_VOCODER_GENERATOR_H_

#include <cstdint>
#include <vector>

#include "nn/layers.h"

namespace vclone {

struct GeneratorConfig {
  int mel_dim = 80;
  int initial_channels = 32;  // halved after every upsampling stage
  std::vector<int> upsample_factors = {8, 8, 4};
  std::vector<int> resblock_kernels = {3, 7};
  std::vector<int> resblock_dilations = {1, 3};
  int pre_kernel = 7;
  int post_kernel = 7;
  double leaky_slope = 0.1;
  double init_stddev = 0.01;

  int hop() const;
  void Validate(int expected_hop = 256) const;
};

// Transposed-conv upsampling with multi-receptive-field residual fusion.
class Generator {
 public:
  Generator(const GeneratorConfig& config, uint64_t seed);

  const GeneratorConfig& config() const { return config_; }

  // (T x mel_dim) -> (1 x 1 x T * hop) in [-1, 1].
  Var Forward(const Var& mel) const;
  std::vector<double> Generate(const Tensor& mel) const;

  NamedParams Parameters() const;
  Generator Clone() const;

 private:
  struct ResBlock {
    std::vector<Conv1dLayer> dilated;
    std::vector<Conv1dLayer> plain;
  };
  Var RunResBlock(const ResBlock& block, const Var& x) const;

  GeneratorConfig config_;
  Conv1dLayer conv_pre_;
  std::vector<ConvTranspose1dLayer> ups_;
  std::vector<std::vector<ResBlock>> resblocks_;  // [stage][kernel]
  Conv1dLayer conv_post_;
};

}  // namespace vclone

#endif  // VCLONE_VOCODER_GENERATOR_H_

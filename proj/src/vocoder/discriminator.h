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

#ifndef VCLONE_VOCODER_DISCRIMINATOR_H_
#define VCLONE_VOCODER_DISCRIMINATOR_H_

#include <cstdint>
#include <vector>

#include "nn/layers.h"

namespace vclone {

struct DiscriminatorConfig {
  std::vector<int> periods = {2, 3, 5, 7, 11};
  std::vector<int> period_channels = {8, 16, 16};
  int scales = 3;
  std::vector<int> scale_channels = {8, 16, 16};
  double leaky_slope = 0.1;

  void Validate() const;
};

// Score maps and intermediate activations, one entry per sub-discriminator.
struct DiscriminatorOutput {
  std::vector<Var> scores;
  std::vector<std::vector<Var>> features;
};

// Multi-period plus multi-scale critics over (1 x 1 x n) waveforms.
class Discriminators {
 public:
  Discriminators(const DiscriminatorConfig& config, uint64_t seed);

  const DiscriminatorConfig& config() const { return config_; }
  int count() const;

  DiscriminatorOutput Forward(const Var& wave) const;

  NamedParams Parameters() const;
  Discriminators Clone() const;

 private:
  struct Stack {
    std::vector<Conv1dLayer> layers;
    Conv1dLayer post;
  };
  Var RunStack(const Stack& stack, Var x, std::vector<Var>* features) const;

  DiscriminatorConfig config_;
  std::vector<Stack> period_stacks_;
  std::vector<Stack> scale_stacks_;
};

}  // namespace vclone

#endif  // VCLONE_VOCODER_DISCRIMINATOR_H_

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

#ifndef VCLONE_NN_ADAM_H_
#define VCLONE_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "nn/layers.h"

namespace vclone {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.0;  // decoupled
};

class Adam {
 public:
  Adam(NamedParams params, AdamOptions options);

  void ZeroGrad();
  // Parameters without a gradient this round are left untouched.
  void Step();

  void set_learning_rate(double lr) { options_.learning_rate = lr; }
  double learning_rate() const { return options_.learning_rate; }
  int64_t steps() const { return steps_; }

 private:
  NamedParams params_;
  AdamOptions options_;
  std::vector<Tensor> first_moment_;
  std::vector<Tensor> second_moment_;
  int64_t steps_ = 0;
};

// Rescales all gradients so their joint L2 norm is at most `max_norm`.
// Returns the norm before clipping.
double ClipGradNorm(const NamedParams& params, double max_norm);

}  // namespace vclone

#endif  // VCLONE_NN_ADAM_H_

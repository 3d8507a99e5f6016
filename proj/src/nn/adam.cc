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

#include "nn/adam.h"

#include <cmath>

namespace vclone {

Adam::Adam(NamedParams params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  for (const auto& [name, var] : params_) {
    first_moment_.emplace_back(var.shape(), 0.0);
    second_moment_.emplace_back(var.shape(), 0.0);
  }
}

void Adam::ZeroGrad() {
  for (auto& [name, var] : params_) {
    if (!var.grad().empty()) var.mutable_grad().Fill(0.0);
  }
}

void Adam::Step() {
  ++steps_;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  const double step_size = options_.learning_rate / correction1;
  for (size_t p = 0; p < params_.size(); ++p) {
    Var& var = params_[p].second;
    const Tensor& grad = var.grad();
    if (grad.empty()) continue;
    Tensor& value = var.mutable_value();
    Tensor& m = first_moment_[p];
    Tensor& v = second_moment_[p];
    const double decay = 1.0 - options_.learning_rate * options_.weight_decay;
    for (size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      m[i] = b1 * m[i] + (1.0 - b1) * g;
      v[i] = b2 * v[i] + (1.0 - b2) * g * g;
      const double denom = std::sqrt(v[i] / correction2) + options_.epsilon;
      value[i] = value[i] * decay - step_size * m[i] / denom;
    }
  }
}

double ClipGradNorm(const NamedParams& params, double max_norm) {
  double sq = 0.0;
  for (const auto& [name, var] : params) {
    for (double g : var.grad().values()) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / (norm + 1e-12);
    for (const auto& [name, var] : params) {
      if (var.grad().empty()) continue;
      for (double& g : var.mutable_grad().values()) g *= scale;
    }
  }
  return norm;
}

}  // namespace vclone

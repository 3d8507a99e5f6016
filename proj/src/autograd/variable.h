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

#ifndef VCLONE_AUTOGRAD_VARIABLE_H_
#define VCLONE_AUTOGRAD_VARIABLE_H_

#include <functional>
#include <memory>
#include <vector>

#include "autograd/tensor.h"

namespace vclone {

// One vertex of the dynamically built computation graph. `backward` reads
// this node's grad and accumulates into the grads of `inputs`.
struct Node {
  Tensor value;
  Tensor grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node&)> backward;

  // Zero-initialised on first use.
  Tensor& EnsureGrad();
  bool has_grad() const { return !grad.empty() || value.empty(); }
};

class Var {
 public:
  Var() = default;
  explicit Var(Tensor value, bool requires_grad = false);

  // Leaf that accumulates gradients across Backward() calls.
  static Var Parameter(Tensor value) { return Var(std::move(value), true); }

  bool defined() const { return node_ != nullptr; }
  const Tensor& value() const { return node_->value; }
  // Var is a handle; mutation goes through to the shared node.
  Tensor& mutable_value() const { return node_->value; }
  const Tensor& grad() const { return node_->grad; }
  Tensor& mutable_grad() const { return node_->EnsureGrad(); }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  const std::vector<int>& shape() const { return node_->value.shape(); }
  int rows() const { return node_->value.rows(); }
  int cols() const { return node_->value.cols(); }

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& shared() const { return node_; }

 private:
  std::shared_ptr<Node> node_;
};

bool GradEnabled();

// Disables graph recording in the current thread for its lifetime.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

// Wraps an op result. When recording is on and any input requires grad, the
// result keeps its inputs and backward closure; otherwise it is a constant.
Var MakeResult(Tensor value, const std::vector<Var>& inputs,
               std::function<void(Node&)> backward);

// Reverse-mode sweep from a single-element output.
void Backward(const Var& output);

// Accumulation helper for backward closures.
inline Tensor* GradOf(Node& self, size_t input) {
  Node* in = self.inputs[input].get();
  return in->requires_grad ? &in->EnsureGrad() : nullptr;
}

}  // namespace vclone

#endif  // VCLONE_AUTOGRAD_VARIABLE_H_

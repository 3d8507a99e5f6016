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

#include "autograd/variable.h"

#include <unordered_set>
#include <utility>

#include "common/error.h"

namespace vclone {
namespace {

thread_local bool grad_enabled = true;

}  // namespace

Tensor& Node::EnsureGrad() {
  if (grad.size() != value.size() || grad.shape() != value.shape()) {
    grad = Tensor(value.shape(), 0.0);
  }
  return grad;
}

Var::Var(Tensor value, bool requires_grad)
    : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

bool GradEnabled() { return grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(grad_enabled) { grad_enabled = false; }
NoGradGuard::~NoGradGuard() { grad_enabled = previous_; }

Var MakeResult(Tensor value, const std::vector<Var>& inputs,
               std::function<void(Node&)> backward) {
  Var out(std::move(value), false);
  if (!grad_enabled) return out;
  bool any = false;
  for (const Var& in : inputs) {
    if (in.requires_grad()) {
      any = true;
      break;
    }
  }
  if (!any) return out;
  Node* node = out.node();
  node->requires_grad = true;
  node->inputs.reserve(inputs.size());
  for (const Var& in : inputs) node->inputs.push_back(in.shared());
  node->backward = std::move(backward);
  return out;
}

void Backward(const Var& output) {
  Require(output.defined() && output.value().size() == 1,
          ErrorCode::kShapeMismatch, "Backward needs a single-element output");
  if (!output.requires_grad()) return;

  // Iterative post-order DFS gives a topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, size_t>> stack;
  stack.emplace_back(output.node(), 0);
  visited.insert(output.node());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node* child = node->inputs[next++].get();
      if (child->requires_grad && !child->inputs.empty() &&
          visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  output.node()->EnsureGrad()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (node->backward && !node->grad.empty()) node->backward(*node);
  }
  // Interior grads are scratch space; release them so a second sweep over a
  // shared subgraph starts clean.
  for (Node* node : order) {
    if (!node->inputs.empty()) node->grad = Tensor();
  }
}

}  // namespace vclone
